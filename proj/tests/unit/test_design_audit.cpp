#include "shci/design_audit.hpp"
#include "shci/errors.hpp"
#include "shci/rng.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <cmath>

using namespace shci;

TEST(DesignAudit, Binomial)
{
    EXPECT_EQ(binomial(5, 2), 10.0);
    EXPECT_EQ(binomial(12, 6), 924.0);
    EXPECT_EQ(binomial(3, 4), 0.0);
}

TEST(DesignAudit, ScaledIdentityIsIsometry)
{
    const Eigen::Index n = 6;
    const auto d = DesignOperator::dense(std::sqrt(double(n)) * Eigen::MatrixXd::Identity(n, n));
    for (Eigen::Index k = 1; k <= n; ++k) {
        const auto a = rip_constants_exact(d, k);
        EXPECT_NEAR(a.c_m_estimate, 1.0, 1e-12);
        EXPECT_NEAR(a.C_M_estimate, 1.0, 1e-12);
        const auto mc = rip_constants_montecarlo(d, k, 50, 3);
        EXPECT_NEAR(mc.c_m_estimate, 1.0, 1e-10);
        EXPECT_NEAR(mc.C_M_estimate, 1.0, 1e-10);
        EXPECT_TRUE(mc.optimistic());
    }
}

TEST(DesignAudit, ZeroColumnGivesZeroLowerConstant)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 3);
    x.col(1).setZero();
    EXPECT_EQ(rip_constants_exact(DesignOperator::dense(x), 1).c_m_estimate, 0.0);
}

TEST(DesignAudit, HandMatrixEnumeration)
{
    Eigen::MatrixXd x(2, 3);
    x << 1.0, 2.0, 0.5,
        -1.0, 0.3, 1.5;
    const auto a = rip_constants_exact(DesignOperator::dense(x), 2);
    double lo = 1e300;
    double hi = 0.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        Eigen::MatrixXd sub(2, 2);
        sub.col(0) = x.col(pr[0]);
        sub.col(1) = x.col(pr[1]);
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(sub / std::sqrt(2.0)).singularValues();
        lo = std::min(lo, sv[1]);
        hi = std::max(hi, sv[0]);
    }
    EXPECT_NEAR(a.c_m_estimate, lo, 1e-12);
    EXPECT_NEAR(a.C_M_estimate, hi, 1e-12);
}

TEST(DesignAudit, MonteCarloBracketedByExact)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto d = make_gaussian_design(8, 10, seed);
        for (Eigen::Index k : {1, 2, 3}) {
            const auto exact = rip_constants_exact(d, k);
            const auto mc = rip_constants_montecarlo(d, k, 500, seed);
            EXPECT_GE(mc.c_m_estimate, exact.c_m_estimate - 1e-12);
            EXPECT_LE(mc.C_M_estimate, exact.C_M_estimate + 1e-12);
            EXPECT_LE(exact.c_m_estimate, exact.C_M_estimate);
        }
    }
}

TEST(DesignAudit, MonteCarloNestedAndDeterministic)
{
    const auto d = make_gaussian_design(30, 80, 4);
    const auto a = rip_constants_montecarlo(d, 5, 100, 9);
    const auto b = rip_constants_montecarlo(d, 5, 1000, 9);
    EXPECT_LE(b.c_m_estimate, a.c_m_estimate);
    EXPECT_GE(b.C_M_estimate, a.C_M_estimate);
    const auto c = rip_constants_montecarlo(d, 5, 100, 9);
    EXPECT_EQ(a.c_m_estimate, c.c_m_estimate);
    EXPECT_EQ(a.C_M_estimate, c.C_M_estimate);
}

TEST(DesignAudit, BudgetRejected)
{
    const auto d = make_gaussian_design(10, 60, 1);
    EXPECT_THROW(rip_constants_exact(d, 6), ConfigError);
    EXPECT_THROW(rip_constants_montecarlo(d, 6, 0, 1), ConfigError);
}

TEST(DesignAudit, CompatibilityHoldsForIsometry)
{
    const Eigen::Index n = 8;
    const auto d = DesignOperator::dense(std::sqrt(double(n)) * Eigen::MatrixXd::Identity(n, n));
    for (Eigen::Index s : {1, 2, 4}) {
        const auto res = compatibility_check(d, s, 1.0, 500);
        EXPECT_TRUE(res.holds) << "S = " << s;
        EXPECT_EQ(res.supports_checked, static_cast<long long>(binomial(n, s)));
        EXPECT_GT(res.probes, res.supports_checked * 500);
    }
}

TEST(DesignAudit, CompatibilityWitnessForDuplicateColumns)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(4, 4) * 2.0;
    x.col(3) = x.col(0);
    const auto res = compatibility_check(DesignOperator::dense(x), 1, 0.5, 100);
    ASSERT_FALSE(res.holds);
    ASSERT_TRUE(res.witness.has_value());
    EXPECT_NEAR((x * res.witness->u).norm(), 0.0, 1e-12);
    EXPECT_GT(res.witness->lhs, res.witness->rhs);
}

TEST(DesignAudit, CompatibilityRejectsInputs)
{
    const auto d = make_gaussian_design(5, 5, 1);
    EXPECT_THROW(compatibility_check(d, 1, 0.0), ConfigError);
    EXPECT_THROW(compatibility_check(make_gaussian_design(5, 13, 1), 1, 1.0), ConfigError);
}

TEST(DesignAudit, NearIsometryImpliesCompatibility)
{
    // design with RIP constants inside (2/3, 4/3) over every support
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 10 && checked < 3; ++seed) {
        const Eigen::Index p = 8;
        const Eigen::Index n = 400;
        const auto d = make_gaussian_design(n, p, seed);
        const auto exact = rip_constants_exact(d, p);  // 33 bar_p exceeds p
        if (!(exact.c_m_estimate > 2.0 / 3.0 && exact.C_M_estimate < 4.0 / 3.0)) {
            continue;
        }
        ++checked;
        for (Eigen::Index s : {1, 2}) {
            EXPECT_TRUE(compatibility_check(d, s, 1.0 / 6.0, 1000, seed).holds);
        }
    }
    EXPECT_GE(checked, 3);
}
