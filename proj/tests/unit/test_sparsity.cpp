#include "shci/errors.hpp"
#include "shci/rng.hpp"
#include "shci/sparsity.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using shci::ordered_tail_sum;

TEST(Sparsity, TailSumHandExamples)
{
    Eigen::VectorXd u(4);
    u << 3.0, -1.0, 2.0, 0.0;
    EXPECT_DOUBLE_EQ(ordered_tail_sum(u, 1), 5.0);
    EXPECT_DOUBLE_EQ(ordered_tail_sum(u, 0), 14.0);
    EXPECT_DOUBLE_EQ(ordered_tail_sum(u, 3), 0.0);
    EXPECT_DOUBLE_EQ(ordered_tail_sum(u, 10), 0.0);
    EXPECT_THROW(ordered_tail_sum(u, -1), shci::ConfigError);
}

TEST(Sparsity, TailSumProperties)
{
    shci::Rng r(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index p = 1 + static_cast<Eigen::Index>(r.below(40));
        Eigen::VectorXd u(p);
        for (Eigen::Index i = 0; i < p; ++i) {
            u[i] = r.normal();
        }
        // brute force: sort squares descending and drop the first S
        std::vector<double> sq(p);
        for (Eigen::Index i = 0; i < p; ++i) {
            sq[i] = u[i] * u[i];
        }
        std::sort(sq.begin(), sq.end(), std::greater<>());
        double prev = u.squaredNorm() + 1.0;
        for (Eigen::Index s = 0; s <= p + 1; ++s) {
            const double expected =
                s >= p ? 0.0 : std::accumulate(sq.begin() + s, sq.end(), 0.0);
            const double got = ordered_tail_sum(u, s);
            ASSERT_NEAR(got, expected, 1e-12 * (1.0 + expected));
            ASSERT_LE(got, prev);
            ASSERT_GE(got, 0.0);
            prev = got;
        }
        // permutation and sign invariance
        const Eigen::Index s = static_cast<Eigen::Index>(r.below(p + 1));
        Eigen::VectorXd v = -u.reverse();
        EXPECT_EQ(ordered_tail_sum(u, s), ordered_tail_sum(v, s));
        // scaling by a is a^2 scaling
        EXPECT_NEAR(ordered_tail_sum(2.0 * u, s), 4.0 * ordered_tail_sum(u, s), 1e-12 * (1 + u.squaredNorm()));
    }
}

TEST(Sparsity, SeparationDistance)
{
    Eigen::VectorXd u(3);
    u << 0.0, 3.0, 4.0;
    EXPECT_DOUBLE_EQ(shci::separation_distance(u, 1), 3.0);
    EXPECT_DOUBLE_EQ(shci::separation_distance(u, 2), 0.0);
}

TEST(Sparsity, BandMembership)
{
    shci::SparsityBand band;
    band.S = 1;
    band.C = 1.0;
    band.bar_p = 2;
    band.delta = 0.05;
    const Eigen::Index n = 100;
    const Eigen::Index p = 4;
    const double budget = shci::band_tail_budget(band, p, n);
    EXPECT_NEAR(budget, std::log(4.0 / 0.05) / 100.0, 1e-15);

    Eigen::VectorXd u = Eigen::VectorXd::Zero(p);
    u[0] = 5.0;
    u[1] = std::sqrt(budget) * 0.99;
    EXPECT_TRUE(shci::band_membership(u, band, n));
    u[1] = std::sqrt(budget) * 1.01;
    EXPECT_FALSE(shci::band_membership(u, band, n));
    u[1] = 1e-3;
    u[2] = 1e-3;
    EXPECT_FALSE(shci::band_membership(u, band, n));  // three nonzeros > bar_p
    band.bar_p = p;
    EXPECT_TRUE(shci::band_membership(u, band, n));
    band.B = 1.0;
    EXPECT_FALSE(shci::band_membership(u, band, n));
}

TEST(Sparsity, ValidateBand)
{
    shci::SparsityBand band;
    band.S = 3;
    band.bar_p = 2;
    EXPECT_THROW(shci::validate_band(band, 10), shci::ConfigError);
    band.bar_p = 11;
    EXPECT_NO_THROW(shci::validate_band(band, 10));
    band.S = 11;
    EXPECT_THROW(shci::validate_band(band, 10), shci::ConfigError);
    band.S = 3;
    band.bar_p = 10;
    EXPECT_NO_THROW(shci::validate_band(band, 10));
    band.delta = 1.0;
    EXPECT_THROW(shci::validate_band(band, 10), shci::ConfigError);
}
