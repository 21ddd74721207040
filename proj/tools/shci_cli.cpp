#include "shci/config.hpp"
#include "shci/confidence.hpp"
#include "shci/design_audit.hpp"
#include "shci/errors.hpp"
#include "shci/image.hpp"
#include "shci/io.hpp"
#include "shci/results.hpp"
#include "shci/simulation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace shci;

namespace {

struct SimulateArgs {
    std::string config;
    std::string preset = "desk";
    std::string out = "-";
    std::string format = "csv";
    std::string prior;
    std::optional<int> replications;
    std::optional<double> scale;
    std::string records;
};

SimulationConfig build_config(const std::string& preset, const std::string& config_path)
{
    SimulationConfig cfg = preset_by_name(preset);
    if (!config_path.empty()) {
        cfg = load_simulation_config(config_path, cfg);
    }
    apply_seed_override(cfg);
    return cfg;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) {
        throw ConfigError("cannot write '" + path + "'");
    }
}

int run_simulate(const SimulateArgs& a)
{
    SimulationConfig cfg = build_config(a.preset, a.config);
    if (a.replications) {
        cfg.replications = *a.replications;
    }
    if (a.scale) {
        cfg.constant_scale = *a.scale;
    }
    std::vector<PriorFamily> priors{cfg.prior};
    if (a.prior == "all") {
        priors = {PriorFamily::theta1, PriorFamily::theta2, PriorFamily::theta3};
    } else if (!a.prior.empty()) {
        priors = {parse_prior_family(a.prior)};
    }
    const ResultFormat format = parse_result_format(a.format);

    std::vector<MetricsRow> rows;
    nlohmann::json dump = nlohmann::json::array();
    for (const auto prior : priors) {
        cfg.prior = prior;
        const auto records = run_replications(cfg);
        rows.push_back(aggregate(records));
        std::cerr << to_string(prior) << ": " << to_json(rows.back()).dump() << '\n';
        if (!a.records.empty()) {
            nlohmann::json block{{"config", to_json(cfg)}, {"records", nlohmann::json::array()}};
            for (const auto& r : records) {
                block["records"].push_back(to_json(r));
            }
            dump.push_back(block);
        }
    }
    if (a.out == "-") {
        write_results(std::cout, rows, format);
    } else {
        emit_results(rows, format, a.out);
    }
    if (!a.records.empty()) {
        write_text(a.records, dump.dump(1) + "\n");
    }
    return 0;
}

struct CalibrateArgs {
    std::string config;
    std::string preset = "desk";
    int pilot = 200;
    double quantile = 0.95;
};

int run_calibrate(const CalibrateArgs& a)
{
    const SimulationConfig cfg = build_config(a.preset, a.config);
    const double scale = calibrate_constant_scale(cfg, a.pilot, a.quantile);
    std::cout << std::setprecision(6) << scale << '\n';
    return 0;
}

struct ConfsetArgs {
    std::string x;
    std::string y;
    double sigma2 = 1.0;
    std::vector<Eigen::Index> grid;
    double delta = 0.05;
    double scale = 1.0;
    std::optional<double> kappa;
    double noise_c = 1.0;
    double tail_c = 1.0;
    bool two_index = false;
    std::string out = "-";
};

int run_confset(const ConfsetArgs& a)
{
    const Eigen::MatrixXd x = io::load_matrix(a.x);
    const Eigen::VectorXd y = io::load_vector(a.y);
    const RegressionSample sample = split_sample(x, y, a.sigma2);
    LassoConfig lasso;
    lasso.kappa = a.kappa ? *a.kappa : default_kappa(a.noise_c, a.tail_c);
    lasso.delta = a.delta;
    ThresholdSpec spec;
    spec.delta = a.delta;
    spec.constant_scale = a.scale;

    ConfidenceResult res;
    if (a.two_index) {
        if (a.grid.size() != 2) {
            throw ConfigError("--two-index needs a grid of exactly two sparsity indexes");
        }
        res = two_index_confset(sample, a.grid[0], a.grid[1], lasso, spec);
    } else {
        res = multi_index_confset(sample, a.grid, lasso, spec);
    }
    const nlohmann::json j{{"report", to_json(res.report)},
                           {"ball", to_json(res.ball)},
                           {"estimate", to_json(res.estimate, false)},
                           {"kappa", lasso.kappa}};
    write_text(a.out, j.dump(2) + "\n");
    return 0;
}

struct ImageArgs {
    std::string input;
    std::string out_dir = ".";
    double sampling = 0.05;
    double sparsity = 0.03;
    Eigen::Index s1_factor = 2;
    double scale = 1.0;
    double noise_var = 1e-4;
    double noise_c = 0.01;
    std::optional<double> kappa;
    double delta = 0.05;
    std::optional<std::uint64_t> seed;
};

int run_image(const ImageArgs& a)
{
    ImageJobConfig cfg;
    cfg.sampling_fraction = a.sampling;
    cfg.sparsity_fraction = a.sparsity;
    cfg.s1_factor = a.s1_factor;
    cfg.constant_scale = a.scale;
    cfg.noise = NoiseSpec::gaussian(a.noise_var, a.noise_c);
    cfg.lasso_kappa = a.kappa;
    cfg.delta = a.delta;
    if (a.seed) {
        cfg.seed = *a.seed;
    }
    if (const char* env = std::getenv("SHCI_SEED"); env != nullptr && *env != '\0') {
        cfg.seed = std::stoull(env);
    }
    const GrayImage input = read_pgm(a.input);
    const ImageResult res = run_image_pipeline(input, cfg);

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_pgm(dir / "reconstruction.pgm", res.reconstruction);
    write_pgm(dir / "extremal.pgm", res.extremal);
    const nlohmann::json j{{"decision", res.decision},
                           {"n", res.n},
                           {"S0", res.S0},
                           {"S1", res.S1},
                           {"psnr_db", psnr(input, res.reconstruction)},
                           {"acceptance_scale", res.acceptance_scale},
                           {"report", to_json(res.report)},
                           {"ball", to_json(res.ball, false)},
                           {"estimate", to_json(res.estimate, false)}};
    write_text((dir / "result.json").string(), j.dump(2) + "\n");
    std::cout << "decision " << res.decision << " (S0 = " << res.S0 << ", S1 = " << res.S1 << "), radius "
              << res.ball.radius << ", outputs in " << dir.string() << '\n';
    return 0;
}

struct CheckDesignArgs {
    std::string x;
    Eigen::Index bar_p = 1;
    bool exact = false;
    int trials = 10000;
    std::uint64_t seed = 1;
    std::optional<double> phi_sq;
    Eigen::Index compat_s = 1;
    std::string json;
};

int run_check_design(const CheckDesignArgs& a)
{
    const auto design = DesignOperator::dense(io::load_matrix(a.x));
    DesignAudit audit = a.exact ? rip_constants_exact(design, a.bar_p)
                                : rip_constants_montecarlo(design, a.bar_p, a.trials, a.seed);
    std::optional<CompatibilityResult> compat;
    if (a.phi_sq) {
        compat = compatibility_check(design, a.compat_s, *a.phi_sq, 10000, a.seed);
        if (compat->holds) {
            audit.compatibility_phi_sq = *a.phi_sq;
        }
    }
    std::cout << std::left << std::setw(16) << "quantity" << "value\n";
    std::cout << std::setw(16) << "n x p" << design.rows() << " x " << design.cols() << '\n';
    std::cout << std::setw(16) << "bar_p" << audit.bar_p << '\n';
    std::cout << std::setw(16) << "method"
              << (a.exact ? "exact" : "montecarlo (" + std::to_string(audit.trials) + " trials, optimistic)")
              << '\n';
    std::cout << std::setprecision(10);
    std::cout << std::setw(16) << "c_m" << audit.c_m_estimate << '\n';
    std::cout << std::setw(16) << "C_M" << audit.C_M_estimate << '\n';
    nlohmann::json j = to_json(audit);
    if (compat) {
        std::cout << std::setw(16) << "compatibility" << (compat->holds ? "no violation" : "VIOLATED") << " (S = "
                  << a.compat_s << ", phi^2 = " << *a.phi_sq << ", " << compat->probes << " probes)\n";
        j["compatibility"] = {{"S", a.compat_s}, {"phi_sq", *a.phi_sq}, {"holds", compat->holds},
                              {"probes", compat->probes}};
        if (compat->witness) {
            j["compatibility"]["witness_support"] = compat->witness->support;
        }
    }
    if (!a.json.empty()) {
        write_text(a.json, j.dump(2) + "\n");
    }
    return compat && !compat->holds ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive honest confidence sets for sparse regression"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo study: metrics table per prior");
    simulate->add_option("--config", sim.config, "key = value file applied over the preset");
    simulate->add_option("--preset", sim.preset, "desk | paper")->check(CLI::IsMember({"desk", "paper"}));
    simulate->add_option("--out", sim.out, "output path, - for stdout");
    simulate->add_option("--format", sim.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--prior", sim.prior, "theta1 | theta2 | theta3 | all");
    simulate->add_option("--replications", sim.replications);
    simulate->add_option("--scale", sim.scale, "constant_scale override");
    simulate->add_option("--records", sim.records, "write per-replication records as JSON");

    CalibrateArgs cal;
    auto* calibrate = app.add_subcommand("calibrate", "pilot calibration of constant_scale on Theta1");
    calibrate->add_option("--config", cal.config);
    calibrate->add_option("--preset", cal.preset)->check(CLI::IsMember({"desk", "paper"}));
    calibrate->add_option("--pilot", cal.pilot, "pilot replications");
    calibrate->add_option("--quantile", cal.quantile, "acceptance quantile")->check(CLI::Range(0.0, 1.0));

    ConfsetArgs cs;
    auto* confset = app.add_subcommand("confset", "confidence ball from stacked data (first n rows fit)");
    confset->add_option("--x", cs.x, "2n x p design, binary container")->required();
    confset->add_option("--y", cs.y, "length-2n observations, binary container")->required();
    confset->add_option("--sigma2", cs.sigma2, "noise variance")->required();
    confset->add_option("--grid", cs.grid, "sparsity indexes, e.g. 5,10")->delimiter(',')->required();
    confset->add_option("--delta", cs.delta);
    confset->add_option("--scale", cs.scale, "constant_scale");
    confset->add_option("--kappa", cs.kappa, "penalty constant (default from --noise-c, --tail-C)");
    confset->add_option("--noise-c", cs.noise_c);
    confset->add_option("--tail-C", cs.tail_c);
    confset->add_flag("--two-index", cs.two_index, "two-index test on a two-element grid");
    confset->add_option("--out", cs.out, "JSON output path, - for stdout");

    ImageArgs im;
    auto* image = app.add_subcommand("image", "compressed-sensing image pipeline");
    image->add_option("--input", im.input, "binary PGM")->required();
    image->add_option("--sampling", im.sampling, "measurements per half as a fraction of p");
    image->add_option("--sparsity", im.sparsity, "S0 as a fraction of p");
    image->add_option("--s1-factor", im.s1_factor, "S1 = factor * S0");
    image->add_option("--out-dir", im.out_dir);
    image->add_option("--scale", im.scale, "constant_scale");
    image->add_option("--noise-var", im.noise_var);
    image->add_option("--noise-c", im.noise_c);
    image->add_option("--kappa", im.kappa);
    image->add_option("--delta", im.delta);
    image->add_option("--seed", im.seed);

    CheckDesignArgs cd;
    auto* check = app.add_subcommand("check-design", "audit restricted-isometry constants of a design");
    check->add_option("--x", cd.x, "n x p design, binary container")->required();
    check->add_option("--bar-p", cd.bar_p)->required();
    auto* exact_flag = check->add_flag("--exact", cd.exact, "enumerate all supports");
    check->add_option("--trials", cd.trials, "Monte-Carlo trials")->excludes(exact_flag);
    check->add_option("--seed", cd.seed);
    check->add_option("--phi-sq", cd.phi_sq, "also probe the compatibility condition");
    check->add_option("--compat-S", cd.compat_s);
    check->add_option("--json", cd.json, "write the audit as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) {
            return run_simulate(sim);
        }
        if (*calibrate) {
            return run_calibrate(cal);
        }
        if (*confset) {
            return run_confset(cs);
        }
        if (*image) {
            return run_image(im);
        }
        if (*check) {
            return run_check_design(cd);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
