#include "shci/fourier.hpp"
#include "shci/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using shci::RealFourierTransform;

namespace {

// explicit cos/sin matrix built without FFTW
Eigen::MatrixXd explicit_trig_matrix(Eigen::Index p)
{
    Eigen::MatrixXd t(p, p);
    const double pi = std::numbers::pi;
    for (Eigen::Index r = 0; r < p; ++r) {
        for (Eigen::Index j = 0; j < p; ++j) {
            if (r == 0) {
                t(r, j) = 1.0 / std::sqrt(double(p));
            } else if (p % 2 == 0 && r == p - 1) {
                t(r, j) = ((j % 2 == 0) ? 1.0 : -1.0) / std::sqrt(double(p));
            } else {
                const Eigen::Index k = (r + 1) / 2;
                const double angle = 2.0 * pi * double(k * j) / double(p);
                t(r, j) = std::sqrt(2.0 / p) * ((r % 2 == 1) ? std::cos(angle) : std::sin(angle));
            }
        }
    }
    return t;
}

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

class FourierSizes : public ::testing::TestWithParam<int> {};

TEST_P(FourierSizes, MatchesExplicitMatrix)
{
    const Eigen::Index p = GetParam();
    const Eigen::MatrixXd t = explicit_trig_matrix(p);
    EXPECT_LT((t * t.transpose() - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff(), 1e-12);

    RealFourierTransform f(p);
    const Eigen::VectorXd x = random_vector(p, 11 + p);
    EXPECT_LT((f.forward(x) - t * x).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((f.inverse(x) - t.transpose() * x).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LT((f.inverse(f.forward(x)) - x).cwiseAbs().maxCoeff(), 1e-11);

    for (Eigen::Index r = 0; r < p; ++r) {
        for (Eigen::Index c = 0; c < p; ++c) {
            ASSERT_NEAR(shci::trig_transform_entry(p, r, c), t(r, c), 1e-12);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(EvenAndOdd, FourierSizes, ::testing::Values(1, 2, 3, 4, 7, 8, 15, 16, 33));

TEST(Fourier, LargeTransformIsIsometry)
{
    const Eigen::Index p = 4096;
    RealFourierTransform f(p);
    const Eigen::VectorXd x = random_vector(p, 5);
    EXPECT_NEAR(f.forward(x).norm(), x.norm(), 1e-10 * x.norm());
}
