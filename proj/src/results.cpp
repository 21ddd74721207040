#include "shci/results.hpp"

#include "shci/errors.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace shci {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v)
{
    return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::json index_map_json(const std::map<Eigen::Index, double>& m)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : m) {
        out[std::to_string(k)] = v;
    }
    return out;
}

} // namespace

ResultFormat parse_result_format(const std::string& text)
{
    if (text == "csv") {
        return ResultFormat::csv;
    }
    if (text == "json") {
        return ResultFormat::json;
    }
    throw ConfigError("unknown result format '" + text + "' (csv|json)");
}

const std::vector<std::string>& metrics_columns()
{
    static const std::vector<std::string> cols{"misclassification", "mean_l0", "miss_coverage", "mean_diameter",
                                               "mean_risk"};
    return cols;
}

void write_results(std::ostream& out, const std::vector<MetricsRow>& rows, ResultFormat format)
{
    if (format == ResultFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back(to_json(r));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    const auto& cols = metrics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : rows) {
        out << r.misclassification << ',' << r.mean_l0 << ',' << r.miss_coverage << ',' << r.mean_diameter << ','
            << r.mean_risk << '\n';
    }
}

void emit_results(const std::vector<MetricsRow>& rows, ResultFormat format, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    write_results(out, rows, format);
    out.flush();
    if (!out) {
        throw ConfigError("write failed for '" + path.string() + "'");
    }
}

std::vector<MetricsRow> parse_results_json(const std::string& text)
{
    std::vector<MetricsRow> rows;
    try {
        for (const auto& item : nlohmann::json::parse(text)) {
            MetricsRow r;
            r.misclassification = item.at("misclassification").get<double>();
            r.mean_l0 = item.at("mean_l0").get<double>();
            r.miss_coverage = item.at("miss_coverage").get<double>();
            r.mean_diameter = item.at("mean_diameter").get<double>();
            r.mean_risk = item.at("mean_risk").get<double>();
            rows.push_back(r);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed results JSON: ") + e.what());
    }
    return rows;
}

nlohmann::json to_json(const MetricsRow& row)
{
    return {{"misclassification", row.misclassification},
            {"mean_l0", row.mean_l0},
            {"miss_coverage", row.miss_coverage},
            {"mean_diameter", row.mean_diameter},
            {"mean_risk", row.mean_risk}};
}

nlohmann::json to_json(const EstimateReport& report, bool include_theta)
{
    nlohmann::json j{{"objective", report.objective},
                     {"iterations", report.iterations},
                     {"converged", report.converged},
                     {"l0_count", report.l0_count}};
    if (include_theta) {
        j["theta_hat"] = vector_json(report.theta_hat);
    }
    if (!report.objective_trace.empty()) {
        j["objective_trace"] = report.objective_trace;
    }
    return j;
}

nlohmann::json to_json(const TestReport& report)
{
    return {{"convention", to_string(report.convention)},
            {"r_n", report.r_n},
            {"b_hat", report.b_hat},
            {"tail_stats", index_map_json(report.tail_stats)},
            {"tau_sq", index_map_json(report.tau_sq)},
            {"tau_prime_sq", index_map_json(report.tau_prime_sq)},
            {"psi", report.psi}};
}

nlohmann::json to_json(const ConfidenceBall& ball, bool include_center)
{
    nlohmann::json j{{"radius", ball.radius},
                     {"diameter", confset_diameter(ball)},
                     {"selected_sparsity", ball.selected_sparsity},
                     {"delta", ball.delta}};
    if (include_center) {
        j["center"] = vector_json(ball.center);
    }
    return j;
}

nlohmann::json to_json(const DesignAudit& audit)
{
    nlohmann::json j{{"c_m_estimate", audit.c_m_estimate},
                     {"C_M_estimate", audit.C_M_estimate},
                     {"bar_p", audit.bar_p},
                     {"method", to_string(audit.method)},
                     {"optimistic", audit.optimistic()}};
    if (audit.method == AuditMethod::montecarlo) {
        j["trials"] = audit.trials;
    }
    if (audit.compatibility_phi_sq) {
        j["compatibility_phi_sq"] = *audit.compatibility_phi_sq;
    }
    return j;
}

nlohmann::json to_json(const ReplicationRecord& r)
{
    return {{"index", r.index},           {"label", r.label},         {"decision", r.decision},
            {"selected_sparsity", r.selected_sparsity}, {"covered", r.covered}, {"diameter", r.diameter},
            {"l0", r.l0},                 {"risk", r.risk},           {"separation", r.separation},
            {"rho", r.rho},               {"acceptance_scale", r.acceptance_scale},
            {"b_hat", r.b_hat},           {"r_n", r.r_n},             {"tail", r.tail},
            {"converged", r.converged}};
}

nlohmann::json to_json(const SimulationConfig& cfg)
{
    return {{"p", cfg.p},
            {"n", cfg.n},
            {"S0", cfg.S0},
            {"S1", cfg.S1},
            {"prior", to_string(cfg.prior)},
            {"prior_C", cfg.prior_C},
            {"replications", cfg.replications},
            {"delta", cfg.delta},
            {"noise", cfg.noise.family == NoiseFamily::gaussian ? "gaussian" : "bounded_rademacher"},
            {"noise_scale", cfg.noise.scale},
            {"noise_sub_gaussian_c", cfg.noise.sub_gaussian_c},
            {"design", to_string(cfg.design)},
            {"kappa", cfg.kappa()},
            {"tail_C", cfg.tail_C},
            {"threshold_mode", to_string(cfg.threshold_mode)},
            {"constant_scale", cfg.constant_scale},
            {"test_mode", to_string(cfg.test_mode)},
            {"seed", cfg.seed}};
}

} // namespace shci
