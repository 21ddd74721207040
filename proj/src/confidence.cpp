#include "shci/confidence.hpp"

#include "shci/errors.hpp"
#include "shci/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shci {

namespace {

double log_p_over_delta(double p, double delta)
{
    return std::log(p / delta);
}

const GeneralParams& require_general(const ThresholdSet& ths)
{
    if (!ths.general_params) {
        throw ConfigError("general threshold mode needs general_params");
    }
    return *ths.general_params;
}

void check_dimensions(const RegressionSample& sample, Eigen::Index largest)
{
    sample.validate();
    if (largest > sample.p()) {
        throw ConfigError("sparsity index " + std::to_string(largest) + " exceeds p = " +
                          std::to_string(sample.p()));
    }
    if (const auto& rip = sample.design_first.rip_bounds(); rip && largest > rip->bar_p) {
        throw ConfigError("sparsity index " + std::to_string(largest) + " exceeds bar_p = " +
                          std::to_string(rip->bar_p));
    }
}

struct SharedStats {
    ThresholdSet ths;
    double r_n;
};

SharedStats shared_stats(const RegressionSample& sample, const EstimateReport& estimate, const ThresholdSpec& spec)
{
    if (estimate.theta_hat.size() != sample.p()) {
        throw ConfigError("estimate length does not match p");
    }
    const double b_hat = estimate_b_hat(sample.y_first, spec.delta);
    ThresholdSet ths = spec.bind(b_hat, sample.sigma_sq);
    const double r_n = residual_statistic(sample.design_second, sample.y_second, estimate.theta_hat, sample.sigma_sq);
    return {ths, r_n};
}

} // namespace

void ThresholdSet::validate() const
{
    if (!(b_hat >= 0.0) || !std::isfinite(b_hat)) {
        throw ConfigError("b_hat must be nonnegative and finite");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
    }
    if (!(sigma_sq >= 0.0)) {
        throw ConfigError("sigma_sq must be nonnegative");
    }
    if (!(constant_scale > 0.0) || !std::isfinite(constant_scale)) {
        throw ConfigError("constant_scale must be positive");
    }
    if (mode == ThresholdMode::general) {
        const auto& g = require_general(*this);
        if (!(g.C > 0.0 && g.c_m > 0.0 && g.C_M > 0.0 && g.E > 0.0)) {
            throw ConfigError("general_params must all be positive");
        }
    } else if (general_params) {
        throw ConfigError("general_params only apply in general mode");
    }
}

ThresholdSet ThresholdSpec::bind(double b_hat, double sigma_sq) const
{
    ThresholdSet ths;
    ths.mode = mode;
    ths.b_hat = b_hat;
    ths.delta = delta;
    ths.sigma_sq = sigma_sq;
    ths.general_params = general_params;
    ths.constant_scale = constant_scale;
    ths.validate();
    return ths;
}

double estimate_b_hat(const Eigen::Ref<const Eigen::VectorXd>& y_first, double delta)
{
    if (y_first.size() == 0) {
        throw ConfigError("estimate_b_hat: empty observation vector");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("estimate_b_hat: delta must lie in (0, 1)");
    }
    const double l = std::log(1.0 / delta);
    const double mean_sq = y_first.squaredNorm() / static_cast<double>(y_first.size());
    return std::sqrt(1.5 * (mean_sq * (1.0 + 2.0 * l) + 2.0 * l));
}

double residual_statistic(const DesignOperator& design_second, const Eigen::Ref<const Eigen::VectorXd>& y_second,
                          const Eigen::Ref<const Eigen::VectorXd>& theta_hat, double sigma_sq)
{
    if (y_second.size() != design_second.rows() || theta_hat.size() != design_second.cols()) {
        throw ConfigError("residual_statistic: inconsistent shapes");
    }
    const double n = static_cast<double>(y_second.size());
    return (y_second - design_second.apply(theta_hat)).squaredNorm() / n - sigma_sq;
}

double tail_statistic(const Eigen::Ref<const Eigen::VectorXd>& theta_hat, Eigen::Index S)
{
    return ordered_tail_sum(theta_hat, S);
}

double tau_sq(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p)
{
    ths.validate();
    if (S < 1) {
        throw ConfigError("tau_sq: S must be at least 1");
    }
    const double nn = static_cast<double>(n);
    const double bias = std::log(1.0 / ths.delta) / std::sqrt(nn);
    const double sparse = static_cast<double>(S) * log_p_over_delta(p, ths.delta) / nn;
    double tau = 0.0;
    if (ths.mode == ThresholdMode::explicit_constants) {
        tau = ths.constant_scale * ths.b_hat *
              (constants::kTauBias * std::sqrt(bias) + constants::kTauSparse * std::sqrt(sparse));
    } else {
        const auto& g = require_general(ths);
        const double m = std::min(g.c_m, 1.0);
        tau = ths.constant_scale *
              (3.0 * std::sqrt(g.C / m * bias) + 2.0 * std::sqrt((g.C_M + 1.0) / m * g.E * sparse));
    }
    return tau * tau;
}

double tau_prime_sq(const ThresholdSet& ths, Eigen::Index k, Eigen::Index n, double p)
{
    ths.validate();
    if (k < 1) {
        throw ConfigError("tau_prime_sq: index must be at least 1");
    }
    const double sparse = static_cast<double>(k) * log_p_over_delta(p, ths.delta) / static_cast<double>(n);
    double tau = 0.0;
    if (ths.mode == ThresholdMode::explicit_constants) {
        tau = ths.constant_scale * constants::kTauTail * ths.b_hat * std::sqrt(sparse);
    } else {
        const auto& g = require_general(ths);
        tau = ths.constant_scale * 2.0 * std::sqrt(g.E / std::min(g.c_m, 1.0) * sparse);
    }
    return tau * tau;
}

ThresholdPair thresholds(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p,
                         IndexConvention convention, std::optional<Eigen::Index> tail_index)
{
    Eigen::Index k = S + 1;
    if (convention == IndexConvention::two_index) {
        if (!tail_index) {
            throw ConfigError("two_index thresholds need S1");
        }
        k = *tail_index;
    }
    return {tau_sq(ths, S, n, p), tau_prime_sq(ths, k, n, p)};
}

double ball_radius(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p)
{
    ths.validate();
    const double sparse = static_cast<double>(S) * log_p_over_delta(p, ths.delta) / static_cast<double>(n);
    if (ths.mode == ThresholdMode::explicit_constants) {
        return ths.constant_scale * constants::kRadius * std::sqrt(sparse);
    }
    return ths.constant_scale * std::sqrt(require_general(ths).E * sparse);
}

int two_index_test(double r_n, double tail, const ThresholdPair& thr)
{
    return (r_n <= thr.tau_sq && tail <= thr.tau_prime_sq) ? 0 : 1;
}

double acceptance_scale(double r_n, double tail, const ThresholdPair& unit_thr)
{
    auto needed = [](double stat, double unit) {
        if (stat <= 0.0) {
            return 0.0;
        }
        if (!(unit > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        return std::sqrt(stat / unit);
    };
    return std::max(needed(r_n, unit_thr.tau_sq), needed(tail, unit_thr.tau_prime_sq));
}

ConfidenceResult two_index_from_estimate(const RegressionSample& sample, EstimateReport estimate,
                                         Eigen::Index S0, Eigen::Index S1, const ThresholdSpec& spec)
{
    if (!(S0 >= 1 && S0 < S1)) {
        throw ConfigError("two_index_confset needs 1 <= S0 < S1");
    }
    check_dimensions(sample, S1);
    const auto [ths, r_n] = shared_stats(sample, estimate, spec);
    const Eigen::Index n = sample.n();
    const Eigen::Index p = sample.p();

    ConfidenceResult out;
    out.report.convention = IndexConvention::two_index;
    out.report.r_n = r_n;
    out.report.b_hat = ths.b_hat;
    const ThresholdPair thr = thresholds(ths, S0, n, p, IndexConvention::two_index, S1);
    const double tail = tail_statistic(estimate.theta_hat, S0);
    out.report.tail_stats[S0] = tail;
    out.report.tau_sq[S0] = thr.tau_sq;
    out.report.tau_prime_sq[S0] = thr.tau_prime_sq;
    out.report.psi = two_index_test(r_n, tail, thr);

    const Eigen::Index chosen = out.report.psi == 0 ? S0 : S1;
    out.ball.center = estimate.theta_hat;
    out.ball.radius = ball_radius(ths, chosen, n, p);
    out.ball.selected_sparsity = chosen;
    out.ball.delta = spec.delta;
    out.estimate = std::move(estimate);
    return out;
}

ConfidenceResult multi_index_from_estimate(const RegressionSample& sample, EstimateReport estimate,
                                           const std::vector<Eigen::Index>& grid, const ThresholdSpec& spec)
{
    if (grid.empty()) {
        throw ConfigError("multi_index_confset needs a nonempty grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
            throw ConfigError("multi_index_confset grid must be positive and strictly increasing");
        }
    }
    check_dimensions(sample, grid.back());
    const auto [ths, r_n] = shared_stats(sample, estimate, spec);
    const Eigen::Index n = sample.n();
    const Eigen::Index p = sample.p();

    ConfidenceResult out;
    out.report.convention = IndexConvention::multi_index;
    out.report.r_n = r_n;
    out.report.b_hat = ths.b_hat;
    Eigen::Index selected = grid.back();
    for (const Eigen::Index S : grid) {
        const ThresholdPair thr = thresholds(ths, S, n, p, IndexConvention::multi_index);
        const double tail = tail_statistic(estimate.theta_hat, S);
        out.report.tail_stats[S] = tail;
        out.report.tau_sq[S] = thr.tau_sq;
        out.report.tau_prime_sq[S] = thr.tau_prime_sq;
        if (two_index_test(r_n, tail, thr) == 0) {
            selected = S;
            break;
        }
    }
    out.report.psi = selected;
    out.ball.center = estimate.theta_hat;
    out.ball.radius = ball_radius(ths, selected, n, p);
    out.ball.selected_sparsity = selected;
    out.ball.delta = spec.delta;
    out.estimate = std::move(estimate);
    return out;
}

ConfidenceResult two_index_confset(const RegressionSample& sample, Eigen::Index S0, Eigen::Index S1,
                                   const LassoConfig& lasso_cfg, const ThresholdSpec& ths)
{
    if (!(S0 >= 1 && S0 < S1)) {
        throw ConfigError("two_index_confset needs 1 <= S0 < S1");
    }
    check_dimensions(sample, S1);
    return two_index_from_estimate(sample, lasso_fit(sample.design_first, sample.y_first, lasso_cfg), S0, S1, ths);
}

ConfidenceResult multi_index_confset(const RegressionSample& sample, const std::vector<Eigen::Index>& grid,
                                     const LassoConfig& lasso_cfg, const ThresholdSpec& ths)
{
    if (grid.empty()) {
        throw ConfigError("multi_index_confset needs a nonempty grid");
    }
    sample.validate();
    return multi_index_from_estimate(sample, lasso_fit(sample.design_first, sample.y_first, lasso_cfg), grid, ths);
}

double rho_margin(double b_hat, Eigen::Index S0, Eigen::Index S1, Eigen::Index n, double p, double delta,
                  IndexConvention convention, double constant_scale)
{
    if (!(S0 < S1)) {
        throw ConfigError("rho_margin needs S0 < S1");
    }
    if (!(constant_scale > 0.0)) {
        throw ConfigError("rho_margin constant_scale must be positive");
    }
    const double nn = static_cast<double>(n);
    const double first_const =
        convention == IndexConvention::two_index ? constants::kRhoTwoIndex : constants::kRhoMultiIndex;
    const Eigen::Index k = convention == IndexConvention::two_index ? S1 : S1 + 1;
    const double first = first_const * std::sqrt(std::log(1.0 / delta)) * std::pow(nn, -0.25);
    const double second = constants::kRhoSparse * std::sqrt(static_cast<double>(k) * log_p_over_delta(p, delta) / nn);
    return constant_scale * std::abs(b_hat) * std::min(first, second);
}

double rho_margin_general(const GeneralParams& g, Eigen::Index S0, Eigen::Index S1, Eigen::Index n, double p,
                          double delta, double constant_scale)
{
    if (!(S0 < S1)) {
        throw ConfigError("rho_margin_general needs S0 < S1");
    }
    const double nn = static_cast<double>(n);
    const double lpd = log_p_over_delta(p, delta);
    if (static_cast<double>(S0) > std::sqrt(nn) * std::log(1.0 / delta) / lpd) {
        return 0.0;
    }
    const double lead = 3.0 * (g.C_M + 1.0) / std::sqrt(std::min(g.c_m, 1.0));
    const double first = std::sqrt(g.C * std::log(1.0 / delta)) * std::pow(nn, -0.25);
    const double second = std::sqrt(g.E) * std::sqrt(static_cast<double>(S1) * lpd / nn);
    return constant_scale * lead * std::min(first, second);
}

bool confset_contains(const ConfidenceBall& ball, const Eigen::Ref<const Eigen::VectorXd>& u)
{
    if (u.size() != ball.center.size()) {
        throw ConfigError("confset_contains: length mismatch");
    }
    return (u - ball.center).norm() <= ball.radius;
}

double confset_diameter(const ConfidenceBall& ball)
{
    return 2.0 * ball.radius;
}

} // namespace shci
