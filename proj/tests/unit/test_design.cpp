#include "shci/design.hpp"
#include "shci/errors.hpp"
#include "shci/rng.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

using shci::DesignOperator;

namespace {

Eigen::VectorXd random_vector(Eigen::Index p, std::uint64_t seed)
{
    shci::Rng r(seed);
    Eigen::VectorXd v(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        v[i] = r.normal();
    }
    return v;
}

} // namespace

TEST(Design, DenseApplyAndAdjoint)
{
    const auto d = shci::make_gaussian_design(6, 9, 3);
    const Eigen::MatrixXd& x = d.dense_values();
    const Eigen::VectorXd u = random_vector(9, 1);
    const Eigen::VectorXd v = random_vector(6, 2);
    EXPECT_LT((d.apply(u) - x * u).norm(), 1e-12);
    EXPECT_LT((d.adjoint(v) - x.transpose() * v).norm(), 1e-12);
    std::vector<Eigen::Index> cols{4, 1};
    const Eigen::MatrixXd sub = d.columns(cols);
    EXPECT_EQ(sub.col(0), x.col(4));
    EXPECT_EQ(sub.col(1), x.col(1));
}

TEST(Design, GaussianDesignReproducible)
{
    const auto a = shci::make_gaussian_design(20, 30, 99);
    const auto b = shci::make_gaussian_design(20, 30, 99);
    EXPECT_EQ(a.dense_values(), b.dense_values());
    const auto c = shci::make_gaussian_design(20, 30, 100);
    EXPECT_NE(a.dense_values(), c.dense_values());
    const double mean_sq = a.dense_values().squaredNorm() / 600.0;
    EXPECT_NEAR(mean_sq, 1.0, 0.2);
}

TEST(Design, PartialFourierMatchesMaterialized)
{
    const Eigen::Index p = 32;
    const auto d = shci::make_partial_fourier_design(12, p, 8);
    EXPECT_FALSE(d.is_dense());
    EXPECT_THROW((void)d.dense_values(), shci::ConfigError);
    const Eigen::MatrixXd x = d.materialize();
    ASSERT_EQ(x.rows(), 12);
    const Eigen::VectorXd u = random_vector(p, 3);
    const Eigen::VectorXd v = random_vector(12, 4);
    EXPECT_LT((d.apply(u) - x * u).norm(), 1e-10);
    EXPECT_LT((d.adjoint(v) - x.transpose() * v).norm(), 1e-10);
    const auto& freqs = d.frequency_indices();
    EXPECT_TRUE(std::is_sorted(freqs.begin(), freqs.end()));
    for (Eigen::Index r = 0; r < 12; ++r) {
        for (Eigen::Index c = 0; c < p; ++c) {
            ASSERT_NEAR(x(r, c), std::sqrt(double(p)) * shci::trig_transform_entry(p, freqs[r], c), 1e-12);
        }
    }
}

TEST(Design, FullFourierIsScaledOrthogonal)
{
    const Eigen::Index p = 16;
    const auto d = shci::make_partial_fourier_design(p, p, 1);
    const Eigen::MatrixXd x = d.materialize();
    EXPECT_LT((x.transpose() * x - double(p) * Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Design, PartialFourierRejectsBadFrequencies)
{
    EXPECT_THROW(DesignOperator::partial_fourier(8, {1, 1}), shci::ConfigError);
    EXPECT_THROW(DesignOperator::partial_fourier(8, {8}), shci::ConfigError);
    EXPECT_THROW(shci::make_partial_fourier_design(9, 8, 0), shci::ConfigError);
}

TEST(Design, OperatorNormEstimate)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3);
    x.diagonal() << 3.0, 1.0, 0.5;
    const auto d = DesignOperator::dense(x);
    EXPECT_NEAR(shci::operator_norm_sq_estimate(d, 50), 9.0, 1e-8);
    const auto g = shci::make_gaussian_design(40, 60, 2);
    const double exact = Eigen::JacobiSVD<Eigen::MatrixXd>(g.dense_values()).singularValues()[0];
    const double est = shci::operator_norm_sq_estimate(g, 200);
    EXPECT_LE(est, exact * exact * (1 + 1e-12));
    EXPECT_GT(est, 0.95 * exact * exact);
}
