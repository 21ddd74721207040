#pragma once

#include "shci/design.hpp"
#include "shci/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace shci {

enum class NoiseFamily { gaussian, bounded_rademacher };

/// Independent noise entries. `scale` is the variance for the Gaussian
/// family and the bound b (entries +-b) for the Rademacher family;
/// `sub_gaussian_c` is the tail coefficient c used to pick the penalty.
struct NoiseSpec {
    NoiseFamily family = NoiseFamily::gaussian;
    double scale = 1.0;
    double sub_gaussian_c = 1.0;

    static NoiseSpec gaussian(double variance, std::optional<double> c = std::nullopt);
    static NoiseSpec bounded_rademacher(double bound, std::optional<double> c = std::nullopt);

    [[nodiscard]] double variance() const;
    void validate() const;
};

enum class PriorFamily { theta1, theta2, theta3 };

std::string to_string(PriorFamily family);
PriorFamily parse_prior_family(const std::string& text);

/// Simulation prior over theta. theta1: S0 N(0,1) coordinates over a
/// N(0, sigma0^2) background; theta2: S1 of them; theta3: S0 of them over
/// a wider N(0, sigma1^2) background.
struct PriorSpec {
    PriorFamily family = PriorFamily::theta1;
    Eigen::Index S0 = 5;
    Eigen::Index S1 = 10;
    Eigen::Index p = 10000;
    Eigen::Index n = 1000;
    double C = 32.0;
    /// Replaces the background standard deviation when set (0 gives an
    /// exactly sparse vector).
    std::optional<double> background_sd;

    void validate() const;
};

/// sigma0^2 = S0 log(p) / (n p).
double prior_sigma0_sq(const PriorSpec& spec);
/// sigma1^2 = C (1 / (sqrt(n) p) + S0 log(p) / (n p)).
double prior_sigma1_sq(const PriorSpec& spec);
/// Number of large coordinates drawn by the prior.
Eigen::Index prior_large_count(const PriorSpec& spec);
/// Class label of the prior: 0 for theta1, 1 otherwise.
int prior_class(PriorFamily family);

Eigen::VectorXd sample_prior(const PriorSpec& spec, std::uint64_t seed);

/// Y = X theta + eps with eps i.i.d. from `noise`.
Eigen::VectorXd generate_observations(const Eigen::Ref<const Eigen::VectorXd>& theta,
                                      const DesignOperator& design, const NoiseSpec& noise,
                                      std::uint64_t seed);

/// Two equally sized halves of the data: the first fits the estimator and
/// the thresholds, the second evaluates the test statistics.
struct RegressionSample {
    DesignOperator design_first;
    DesignOperator design_second;
    Eigen::VectorXd y_first;
    Eigen::VectorXd y_second;
    double sigma_sq = 1.0;

    [[nodiscard]] Eigen::Index n() const { return y_first.size(); }
    [[nodiscard]] Eigen::Index p() const { return design_first.cols(); }
    void validate() const;
};

/// Splits 2n stacked observations: rows [0, n) form the first half.
RegressionSample split_sample(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double sigma_sq);

} // namespace shci
