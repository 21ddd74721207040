#include "shci/simulation.hpp"

#include "shci/errors.hpp"
#include "shci/rng.hpp"
#include "shci/sparsity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace shci {

std::string to_string(DesignKind kind)
{
    return kind == DesignKind::gaussian ? "gaussian" : "partial_fourier";
}

DesignKind parse_design_kind(const std::string& text)
{
    if (text == "gaussian") {
        return DesignKind::gaussian;
    }
    if (text == "partial_fourier") {
        return DesignKind::partial_fourier;
    }
    throw ConfigError("unknown design '" + text + "' (gaussian|partial_fourier)");
}

std::string to_string(ThresholdMode mode)
{
    return mode == ThresholdMode::explicit_constants ? "explicit" : "general";
}

ThresholdMode parse_threshold_mode(const std::string& text)
{
    if (text == "explicit") {
        return ThresholdMode::explicit_constants;
    }
    if (text == "general") {
        return ThresholdMode::general;
    }
    throw ConfigError("unknown threshold mode '" + text + "' (explicit|general)");
}

std::string to_string(IndexConvention convention)
{
    return convention == IndexConvention::two_index ? "two_index" : "multi_index";
}

IndexConvention parse_index_convention(const std::string& text)
{
    if (text == "two_index") {
        return IndexConvention::two_index;
    }
    if (text == "multi_index") {
        return IndexConvention::multi_index;
    }
    throw ConfigError("unknown test mode '" + text + "' (two_index|multi_index)");
}

SimulationConfig SimulationConfig::paper_preset()
{
    return SimulationConfig{};
}

SimulationConfig SimulationConfig::desk_preset()
{
    SimulationConfig cfg;
    cfg.p = 2048;
    cfg.n = 512;
    cfg.S0 = 5;
    cfg.S1 = 20;
    cfg.replications = 200;
    cfg.noise = NoiseSpec::gaussian(0.0625, 0.25);
    cfg.tail_C = 1.0;
    cfg.test_mode = IndexConvention::multi_index;
    cfg.constant_scale = kDeskConstantScale;
    return cfg;
}

void SimulationConfig::validate() const
{
    if (p < 1 || n < 1) {
        throw ConfigError("p and n must be positive");
    }
    if (!(S0 >= 1 && S0 < S1 && S1 <= p)) {
        throw ConfigError("need 1 <= S0 < S1 <= p");
    }
    if (replications < 1) {
        throw ConfigError("replications must be at least 1");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
    }
    if (design == DesignKind::partial_fourier && n > p) {
        throw ConfigError("partial Fourier design needs n <= p");
    }
    if (!(tail_C > 0.0) || !(prior_C > 0.0)) {
        throw ConfigError("tail_C and prior_C must be positive");
    }
    if (!(constant_scale > 0.0)) {
        throw ConfigError("constant_scale must be positive");
    }
    if (threads < 0) {
        throw ConfigError("threads must be nonnegative");
    }
    noise.validate();
    prior_spec().validate();
    resolved_lasso().validate();
    threshold_spec().bind(1.0, noise.variance());
}

double SimulationConfig::kappa() const
{
    return lasso_kappa ? *lasso_kappa : default_kappa(noise.sub_gaussian_c, tail_C);
}

LassoConfig SimulationConfig::resolved_lasso() const
{
    LassoConfig cfg = lasso;
    cfg.kappa = kappa();
    cfg.delta = delta;
    return cfg;
}

ThresholdSpec SimulationConfig::threshold_spec() const
{
    ThresholdSpec spec;
    spec.mode = threshold_mode;
    spec.delta = delta;
    spec.constant_scale = constant_scale;
    if (threshold_mode == ThresholdMode::general) {
        spec.general_params =
            GeneralParams{tail_C, general_c_m, general_C_M, lasso_risk_constant(kappa(), tail_C)};
    }
    return spec;
}

PriorSpec SimulationConfig::prior_spec() const
{
    PriorSpec spec;
    spec.family = prior;
    spec.S0 = S0;
    spec.S1 = S1;
    spec.p = p;
    spec.n = n;
    spec.C = prior_C;
    return spec;
}

DesignOperator make_design(const SimulationConfig& cfg, std::uint64_t seed)
{
    if (cfg.design == DesignKind::gaussian) {
        return make_gaussian_design(cfg.n, cfg.p, seed);
    }
    return make_partial_fourier_design(cfg.n, cfg.p, seed);
}

ReplicationRecord run_replication(const SimulationConfig& cfg, Eigen::Index index, const ThetaSampler& sampler)
{
    const Rng rep = Rng(cfg.seed).split(static_cast<std::uint64_t>(index));
    const std::uint64_t theta_seed = rep.split(0).key();
    const Eigen::VectorXd theta = sampler ? sampler(cfg, theta_seed) : sample_prior(cfg.prior_spec(), theta_seed);
    if (theta.size() != cfg.p) {
        throw ConfigError("theta sampler returned the wrong length");
    }

    RegressionSample sample{make_design(cfg, rep.split(1).key()), make_design(cfg, rep.split(2).key()),
                            Eigen::VectorXd(), Eigen::VectorXd(), cfg.noise.variance()};
    sample.y_first = generate_observations(theta, sample.design_first, cfg.noise, rep.split(3).key());
    sample.y_second = generate_observations(theta, sample.design_second, cfg.noise, rep.split(4).key());

    const ThresholdSpec spec = cfg.threshold_spec();
    EstimateReport estimate = lasso_fit(sample.design_first, sample.y_first, cfg.resolved_lasso());
    const ConfidenceResult res = cfg.test_mode == IndexConvention::two_index
                                     ? two_index_from_estimate(sample, std::move(estimate), cfg.S0, cfg.S1, spec)
                                     : multi_index_from_estimate(sample, std::move(estimate), cfg.grid(), spec);

    ReplicationRecord rec;
    rec.index = index;
    rec.label = prior_class(cfg.prior);
    rec.selected_sparsity = res.ball.selected_sparsity;
    rec.decision = rec.selected_sparsity == cfg.S0 ? 0 : 1;
    rec.covered = confset_contains(res.ball, theta);
    rec.diameter = confset_diameter(res.ball);
    rec.l0 = res.estimate.l0_count;
    rec.risk = (res.estimate.theta_hat - theta).squaredNorm();
    rec.separation = separation_distance(theta, cfg.S0);
    rec.b_hat = res.report.b_hat;
    rec.rho = cfg.threshold_mode == ThresholdMode::general
                  ? rho_margin_general(*spec.general_params, cfg.S0, cfg.S1, cfg.n, cfg.p, cfg.delta,
                                       cfg.constant_scale)
                  : rho_margin(rec.b_hat, cfg.S0, cfg.S1, cfg.n, cfg.p, cfg.delta, cfg.test_mode,
                               cfg.constant_scale);
    rec.r_n = res.report.r_n;
    rec.tail = res.report.tail_stats.at(cfg.S0);
    rec.converged = res.estimate.converged;

    ThresholdSpec unit = spec;
    unit.constant_scale = 1.0;
    const ThresholdSet unit_set = unit.bind(rec.b_hat, sample.sigma_sq);
    const ThresholdPair unit_thr = thresholds(unit_set, cfg.S0, cfg.n, cfg.p, cfg.test_mode, cfg.S1);
    rec.acceptance_scale = acceptance_scale(rec.r_n, rec.tail, unit_thr);
    return rec;
}

std::vector<ReplicationRecord> run_replications(const SimulationConfig& cfg, const ThetaSampler& sampler)
{
    cfg.validate();
    const auto total = static_cast<std::size_t>(cfg.replications);
    std::vector<ReplicationRecord> records(total);
    unsigned workers = cfg.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                        : static_cast<unsigned>(cfg.threads);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) {
                return;
            }
            try {
                records[i] = run_replication(cfg, static_cast<Eigen::Index>(i), sampler);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(total);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

MetricsRow aggregate(std::vector<ReplicationRecord> records)
{
    MetricsRow row;
    if (records.empty()) {
        return row;
    }
    std::sort(records.begin(), records.end(),
              [](const ReplicationRecord& a, const ReplicationRecord& b) { return a.index < b.index; });
    for (const auto& r : records) {
        row.misclassification += r.decision != r.label ? 1.0 : 0.0;
        row.mean_l0 += static_cast<double>(r.l0);
        row.miss_coverage += r.covered ? 0.0 : 1.0;
        row.mean_diameter += r.diameter;
        row.mean_risk += r.risk;
    }
    const auto m = static_cast<double>(records.size());
    row.misclassification /= m;
    row.mean_l0 /= m;
    row.miss_coverage /= m;
    row.mean_diameter /= m;
    row.mean_risk /= m;
    return row;
}

MetricsRow run_simulation(const SimulationConfig& cfg)
{
    return aggregate(run_replications(cfg));
}

double calibrate_constant_scale(SimulationConfig cfg, int pilot_replications, double quantile)
{
    if (!(quantile > 0.0 && quantile <= 1.0)) {
        throw ConfigError("calibration quantile must lie in (0, 1]");
    }
    cfg.prior = PriorFamily::theta1;
    cfg.replications = pilot_replications;
    const auto records = run_replications(cfg);
    std::vector<double> scales;
    scales.reserve(records.size());
    for (const auto& r : records) {
        scales.push_back(r.acceptance_scale);
    }
    std::sort(scales.begin(), scales.end());
    const auto rank = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(scales.size())));
    return scales[std::max<std::size_t>(rank, 1) - 1];
}

ThetaSampler exact_sparse_sampler(Eigen::Index sparsity, double min_magnitude)
{
    return [sparsity, min_magnitude](const SimulationConfig& cfg, std::uint64_t seed) {
        Rng r(seed);
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(cfg.p);
        const auto support = r.sample_without_replacement(static_cast<std::size_t>(cfg.p),
                                                          static_cast<std::size_t>(sparsity));
        for (auto j : support) {
            const double sign = r.uniform() < 0.5 ? -1.0 : 1.0;
            theta[static_cast<Eigen::Index>(j)] = sign * (min_magnitude + std::abs(r.normal()));
        }
        return theta;
    };
}

} // namespace shci
