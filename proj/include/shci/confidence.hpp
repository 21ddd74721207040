#pragma once

#include "shci/lasso.hpp"
#include "shci/model.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <vector>

namespace shci {

enum class ThresholdMode { explicit_constants, general };

/// two_index: Psi in {0, 1} between S0 and S1, tail threshold uses S1.
/// multi_index: smallest accepted S of a grid, tail threshold uses S + 1.
enum class IndexConvention { two_index, multi_index };

/// Constants of the explicit construction.
namespace constants {
inline constexpr double kTauBias = 14.0;
inline constexpr double kTauSparse = 381.0;
inline constexpr double kTauTail = 330.0;
inline constexpr double kRadius = 650.0;
inline constexpr double kRhoTwoIndex = 54.0;
inline constexpr double kRhoMultiIndex = 50.0;
inline constexpr double kRhoSparse = 460.0;
} // namespace constants

/// Design and estimator constants of the general construction.
struct GeneralParams {
    double C = 32.0;
    double c_m = 1.0;
    double C_M = 1.0;
    double E = 1.0;
};

/// Everything the thresholds depend on besides (S, n, p).
struct ThresholdSet {
    ThresholdMode mode = ThresholdMode::explicit_constants;
    double b_hat = 0.0;
    double delta = 0.05;
    double sigma_sq = 1.0;
    std::optional<GeneralParams> general_params;
    /// Multiplies every printed constant; 1 is the unmodified construction.
    double constant_scale = 1.0;

    void validate() const;
};

/// User-facing part of a ThresholdSet; b_hat and sigma_sq come from the sample.
struct ThresholdSpec {
    ThresholdMode mode = ThresholdMode::explicit_constants;
    double delta = 0.05;
    std::optional<GeneralParams> general_params;
    double constant_scale = 1.0;

    ThresholdSet bind(double b_hat, double sigma_sq) const;
};

struct ThresholdPair {
    double tau_sq = 0.0;
    double tau_prime_sq = 0.0;
};

struct TestReport {
    IndexConvention convention = IndexConvention::two_index;
    double r_n = 0.0;
    double b_hat = 0.0;
    std::map<Eigen::Index, double> tail_stats;
    std::map<Eigen::Index, double> tau_sq;
    std::map<Eigen::Index, double> tau_prime_sq;
    /// Psi (0 or 1) for two_index, the selected sparsity for multi_index.
    Eigen::Index psi = 0;
};

struct ConfidenceBall {
    Eigen::VectorXd center;
    double radius = 0.0;
    Eigen::Index selected_sparsity = 1;
    double delta = 0.05;
};

struct ConfidenceResult {
    TestReport report;
    ConfidenceBall ball;
    EstimateReport estimate;
};

/// sqrt(3/2 (mean(y^2) (1 + 2 log(1/delta)) + 2 log(1/delta))).
double estimate_b_hat(const Eigen::Ref<const Eigen::VectorXd>& y_first, double delta);

/// ||y_second - X theta_hat||^2 / n - sigma^2.
double residual_statistic(const DesignOperator& design_second, const Eigen::Ref<const Eigen::VectorXd>& y_second,
                          const Eigen::Ref<const Eigen::VectorXd>& theta_hat, double sigma_sq);

/// Sum of the squared entries of theta_hat beyond the S largest in magnitude.
double tail_statistic(const Eigen::Ref<const Eigen::VectorXd>& theta_hat, Eigen::Index S);

/// tau_n(S)^2.
double tau_sq(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p);

/// tau'_n^2 evaluated at sparsity index k (S1 for two_index, S + 1 for multi_index).
double tau_prime_sq(const ThresholdSet& ths, Eigen::Index k, Eigen::Index n, double p);

/// (tau_n(S)^2, tau'_n^2) under a convention. For two_index, tail_index is S1.
ThresholdPair thresholds(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p,
                         IndexConvention convention, std::optional<Eigen::Index> tail_index = std::nullopt);

/// Radius of the ball for sparsity S.
double ball_radius(const ThresholdSet& ths, Eigen::Index S, Eigen::Index n, double p);

/// 0 iff r_n <= tau^2 and tail <= tau'^2.
int two_index_test(double r_n, double tail, const ThresholdPair& thr);

/// Smallest constant_scale s for which the test at (tau_unit, tau_prime_unit),
/// computed with scale 1, accepts once both thresholds are multiplied by s.
double acceptance_scale(double r_n, double tail, const ThresholdPair& unit_thr);

ConfidenceResult two_index_confset(const RegressionSample& sample, Eigen::Index S0, Eigen::Index S1,
                                   const LassoConfig& lasso_cfg, const ThresholdSpec& ths);

ConfidenceResult multi_index_confset(const RegressionSample& sample, const std::vector<Eigen::Index>& grid,
                                     const LassoConfig& lasso_cfg, const ThresholdSpec& ths);

/// Variants that take an already fitted first-half estimate.
ConfidenceResult two_index_from_estimate(const RegressionSample& sample, EstimateReport estimate,
                                         Eigen::Index S0, Eigen::Index S1, const ThresholdSpec& ths);
ConfidenceResult multi_index_from_estimate(const RegressionSample& sample, EstimateReport estimate,
                                           const std::vector<Eigen::Index>& grid, const ThresholdSpec& ths);

/// Separation needed between the S0 and S1 classes.
/// two_index: |B| min(54 sqrt(log(1/delta)) n^{-1/4}, 460 sqrt(S1 log(p/delta) / n)).
/// multi_index: |B| min(50 sqrt(log(1/delta)) n^{-1/4}, 460 sqrt((S1 + 1) log(p/delta) / n)).
/// constant_scale multiplies the printed constants.
double rho_margin(double b_hat, Eigen::Index S0, Eigen::Index S1, Eigen::Index n, double p, double delta,
                  IndexConvention convention, double constant_scale = 1.0);

/// Experimental: separation under general constants,
/// 3 (C_M + 1) / sqrt(min(c_m, 1)) min(sqrt(C log(1/delta)) n^{-1/4}, sqrt(E S1 log(p/delta) / n)),
/// and 0 when S0 > sqrt(n) log(1/delta) / log(p/delta).
double rho_margin_general(const GeneralParams& params, Eigen::Index S0, Eigen::Index S1, Eigen::Index n,
                          double p, double delta, double constant_scale = 1.0);

bool confset_contains(const ConfidenceBall& ball, const Eigen::Ref<const Eigen::VectorXd>& u);
double confset_diameter(const ConfidenceBall& ball);

} // namespace shci
