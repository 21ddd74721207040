#include "shci/model.hpp"

#include "shci/errors.hpp"

#include <cmath>

namespace shci {

NoiseSpec NoiseSpec::gaussian(double variance, std::optional<double> c)
{
    NoiseSpec spec{NoiseFamily::gaussian, variance, c.value_or(std::sqrt(variance))};
    spec.validate();
    return spec;
}

NoiseSpec NoiseSpec::bounded_rademacher(double bound, std::optional<double> c)
{
    NoiseSpec spec{NoiseFamily::bounded_rademacher, bound, c.value_or(bound)};
    spec.validate();
    return spec;
}

double NoiseSpec::variance() const
{
    return family == NoiseFamily::gaussian ? scale : scale * scale;
}

void NoiseSpec::validate() const
{
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw ConfigError("noise scale must be a finite nonnegative number");
    }
    if (!(sub_gaussian_c >= 0.0) || !std::isfinite(sub_gaussian_c)) {
        throw ConfigError("sub-Gaussian coefficient must be a finite nonnegative number");
    }
    // relative slack absorbs the rounding of c = sqrt(variance)
    const double slack = 1e-12 * std::max(1.0, scale);
    if (family == NoiseFamily::gaussian && sub_gaussian_c * sub_gaussian_c < scale - slack) {
        throw ConfigError("Gaussian noise requires c^2 >= variance");
    }
    if (family == NoiseFamily::bounded_rademacher && sub_gaussian_c < scale) {
        throw ConfigError("bounded noise requires c >= bound");
    }
}

std::string to_string(PriorFamily family)
{
    switch (family) {
    case PriorFamily::theta1: return "theta1";
    case PriorFamily::theta2: return "theta2";
    case PriorFamily::theta3: return "theta3";
    }
    return "theta1";
}

PriorFamily parse_prior_family(const std::string& text)
{
    if (text == "theta1") return PriorFamily::theta1;
    if (text == "theta2") return PriorFamily::theta2;
    if (text == "theta3") return PriorFamily::theta3;
    throw ConfigError("unknown prior family '" + text + "' (expected theta1|theta2|theta3)");
}

void PriorSpec::validate() const
{
    if (S0 < 1 || S1 <= S0 || S1 > p) {
        throw ConfigError("prior requires 1 <= S0 < S1 <= p");
    }
    if (n < 1 || !(C > 0.0)) {
        throw ConfigError("prior requires n >= 1 and C > 0");
    }
    if (background_sd && !(*background_sd >= 0.0)) {
        throw ConfigError("prior background_sd must be nonnegative");
    }
}

double prior_sigma0_sq(const PriorSpec& spec)
{
    const double p = static_cast<double>(spec.p);
    const double n = static_cast<double>(spec.n);
    return static_cast<double>(spec.S0) * std::log(p) / (n * p);
}

double prior_sigma1_sq(const PriorSpec& spec)
{
    const double p = static_cast<double>(spec.p);
    const double n = static_cast<double>(spec.n);
    return spec.C * (1.0 / (std::sqrt(n) * p) + static_cast<double>(spec.S0) * std::log(p) / (n * p));
}

Eigen::Index prior_large_count(const PriorSpec& spec)
{
    return spec.family == PriorFamily::theta2 ? spec.S1 : spec.S0;
}

int prior_class(PriorFamily family) { return family == PriorFamily::theta1 ? 0 : 1; }

Eigen::VectorXd sample_prior(const PriorSpec& spec, std::uint64_t seed)
{
    spec.validate();
    const double background_sd =
        spec.background_sd.value_or(std::sqrt(spec.family == PriorFamily::theta3
                                                  ? prior_sigma1_sq(spec)
                                                  : prior_sigma0_sq(spec)));
    Rng rng(seed);
    Rng positions = rng.split(0);
    Rng values = rng.split(1);
    Rng background = rng.split(2);

    Eigen::VectorXd theta(spec.p);
    for (Eigen::Index j = 0; j < spec.p; ++j) {
        theta[j] = background_sd * background.normal();
    }
    const auto large = positions.sample_without_replacement(static_cast<std::size_t>(spec.p),
                                                            static_cast<std::size_t>(prior_large_count(spec)));
    for (const auto j : large) {
        theta[static_cast<Eigen::Index>(j)] = values.normal();
    }
    return theta;
}

Eigen::VectorXd generate_observations(const Eigen::Ref<const Eigen::VectorXd>& theta,
                                      const DesignOperator& design, const NoiseSpec& noise,
                                      std::uint64_t seed)
{
    noise.validate();
    if (theta.size() != design.cols()) {
        throw ConfigError("generate_observations: theta length must equal p");
    }
    Eigen::VectorXd y = design.apply(theta);
    Rng rng(seed);
    if (noise.family == NoiseFamily::gaussian) {
        const double sd = std::sqrt(noise.scale);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            y[i] += sd * rng.normal();
        }
    } else {
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            y[i] += (rng() >> 63) != 0 ? noise.scale : -noise.scale;
        }
    }
    return y;
}

void RegressionSample::validate() const
{
    if (design_first.cols() != design_second.cols() || design_first.rows() != design_second.rows()) {
        throw ConfigError("sample halves must share n and p");
    }
    if (y_first.size() != design_first.rows() || y_second.size() != design_second.rows()) {
        throw ConfigError("observation lengths must match the design rows");
    }
    if (!y_first.allFinite() || !y_second.allFinite()) {
        throw NumericError("observations contain non-finite values");
    }
    if (!(sigma_sq >= 0.0) || !std::isfinite(sigma_sq)) {
        throw ConfigError("sigma_sq must be a finite nonnegative number");
    }
}

RegressionSample split_sample(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double sigma_sq)
{
    if (x.rows() != y.size() || x.rows() < 2 || x.rows() % 2 != 0) {
        throw ConfigError("split_sample: need an even number (>= 2) of rows matching y");
    }
    const Eigen::Index n = x.rows() / 2;
    RegressionSample sample{DesignOperator::dense(x.topRows(n)), DesignOperator::dense(x.bottomRows(n)),
                            y.head(n), y.tail(n), sigma_sq};
    sample.validate();
    return sample;
}

} // namespace shci
