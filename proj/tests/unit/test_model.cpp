#include "shci/errors.hpp"
#include "shci/model.hpp"
#include "shci/sparsity.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace shci;

TEST(Model, PriorVariances)
{
    PriorSpec spec;
    spec.p = 10000;
    spec.n = 1000;
    spec.S0 = 5;
    spec.C = 32.0;
    const double s0 = 5.0 * std::log(10000.0) / (1000.0 * 10000.0);
    EXPECT_NEAR(prior_sigma0_sq(spec), s0, 1e-18);
    EXPECT_NEAR(prior_sigma1_sq(spec), 32.0 * (1.0 / (std::sqrt(1000.0) * 10000.0) + s0), 1e-16);
}

TEST(Model, PriorSamplesHaveExpectedShape)
{
    PriorSpec spec;
    spec.p = 2000;
    spec.n = 500;
    spec.S0 = 4;
    spec.S1 = 12;
    for (auto family : {PriorFamily::theta1, PriorFamily::theta2, PriorFamily::theta3}) {
        spec.family = family;
        const Eigen::VectorXd theta = sample_prior(spec, 77);
        ASSERT_EQ(theta.size(), spec.p);
        EXPECT_EQ(theta, sample_prior(spec, 77));
        const Eigen::Index large = prior_large_count(spec);
        EXPECT_EQ(large, family == PriorFamily::theta2 ? 12 : 4);
        // background variance matches its family
        const double bg = ordered_tail_sum(theta, large) / double(spec.p - large);
        const double expected = family == PriorFamily::theta3 ? prior_sigma1_sq(spec) : prior_sigma0_sq(spec);
        EXPECT_NEAR(bg / expected, 1.0, 0.15) << to_string(family);
    }
    spec.family = PriorFamily::theta1;
    spec.background_sd = 0.0;
    EXPECT_EQ(count_nonzero(sample_prior(spec, 1)), 4);
}

TEST(Model, PriorParsing)
{
    EXPECT_EQ(parse_prior_family("theta2"), PriorFamily::theta2);
    EXPECT_THROW(parse_prior_family("theta9"), ConfigError);
    EXPECT_EQ(prior_class(PriorFamily::theta1), 0);
    EXPECT_EQ(prior_class(PriorFamily::theta3), 1);
}

TEST(Model, ObservationsNoiseLevel)
{
    const auto design = make_gaussian_design(4000, 3, 5);
    const Eigen::VectorXd theta = Eigen::Vector3d(1.0, -2.0, 0.5);
    const Eigen::VectorXd mean = design.apply(theta);

    const Eigen::VectorXd y0 = generate_observations(theta, design, NoiseSpec::gaussian(0.0), 3);
    EXPECT_LT((y0 - mean).norm(), 1e-12);

    const Eigen::VectorXd y = generate_observations(theta, design, NoiseSpec::gaussian(0.25), 3);
    EXPECT_NEAR((y - mean).squaredNorm() / 4000.0, 0.25, 0.02);

    const Eigen::VectorXd yb = generate_observations(theta, design, NoiseSpec::bounded_rademacher(0.3), 3);
    EXPECT_LT(((yb - mean).cwiseAbs().array() - 0.3).abs().maxCoeff(), 1e-12);
    EXPECT_NEAR(NoiseSpec::bounded_rademacher(0.3).variance(), 0.09, 1e-15);
}

TEST(Model, NoiseValidation)
{
    EXPECT_THROW(NoiseSpec::gaussian(-1.0).validate(), ConfigError);
    EXPECT_THROW(NoiseSpec::bounded_rademacher(-0.1).validate(), ConfigError);
}

TEST(Model, SplitSample)
{
    Eigen::MatrixXd x(4, 2);
    x << 1, 2, 3, 4, 5, 6, 7, 8;
    Eigen::VectorXd y(4);
    y << 1, 2, 3, 4;
    const auto s = split_sample(x, y, 0.5);
    EXPECT_EQ(s.n(), 2);
    EXPECT_EQ(s.p(), 2);
    EXPECT_EQ(s.design_first.dense_values()(1, 0), 3.0);
    EXPECT_EQ(s.design_second.dense_values()(0, 1), 6.0);
    EXPECT_EQ(s.y_second[1], 4.0);
    EXPECT_THROW(split_sample(x.topRows(3), y.head(3), 1.0), ConfigError);
}
