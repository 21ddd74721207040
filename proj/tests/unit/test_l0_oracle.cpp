#include "shci/errors.hpp"
#include "shci/l0_oracle.hpp"
#include "shci/rng.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace shci;

namespace {

// independent enumeration with an SVD pseudo-inverse
double brute_force_minimum(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double weight)
{
    const Eigen::Index p = x.cols();
    double best = y.squaredNorm();
    for (unsigned mask = 1; mask < (1U << p); ++mask) {
        std::vector<Eigen::Index> cols;
        for (Eigen::Index j = 0; j < p; ++j) {
            if ((mask >> j) & 1U) {
                cols.push_back(j);
            }
        }
        Eigen::MatrixXd sub(x.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) {
            sub.col(static_cast<Eigen::Index>(k)) = x.col(cols[k]);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd coef = svd.solve(y);
        best = std::min(best, (y - sub * coef).squaredNorm() + weight * double(cols.size()));
    }
    return best;
}

} // namespace

TEST(L0Oracle, MatchesBruteForce)
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Eigen::Index p = 6 + static_cast<Eigen::Index>(seed % 4);
        const auto design = make_gaussian_design(10, p, seed);
        Rng r(seed * 31);
        Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
        theta[0] = 2.0;
        theta[p - 1] = -1.5;
        Eigen::VectorXd y = design.apply(theta);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            y[i] += 0.7 * r.normal();
        }
        const double kappa = 0.5;
        const auto fit = l0_oracle_fit(design, y, kappa, 0.05);
        const double weight = kappa * std::log(double(p) / 0.05);
        const double expected = brute_force_minimum(design.dense_values(), y, weight);
        EXPECT_NEAR(fit.objective, expected, 1e-9 * (1 + expected));
        EXPECT_NEAR(l0_objective(design, y, fit.theta_hat, kappa, 0.05), expected, 1e-9 * (1 + expected));
    }
}

TEST(L0Oracle, TieBreakingPrefersSmallLexicographicSupport)
{
    // columns 0 and 2 are identical; y lies on them
    Eigen::MatrixXd x(3, 3);
    x << 1, 0, 1,
         0, 1, 0,
         0, 0, 0;
    Eigen::Vector3d y(2.0, 0.0, 0.0);
    const auto fit = l0_oracle_fit(DesignOperator::dense(x), y, 0.1, 0.05);
    EXPECT_EQ(fit.l0_count, 1);
    EXPECT_NEAR(fit.theta_hat[0], 2.0, 1e-12);
    EXPECT_EQ(fit.theta_hat[2], 0.0);

    // swapping the duplicate column order still picks the lowest index
    Eigen::MatrixXd x2 = x;
    x2.col(0).swap(x2.col(1));
    const auto fit2 = l0_oracle_fit(DesignOperator::dense(x2), y, 0.1, 0.05);
    EXPECT_EQ(fit2.l0_count, 1);
    EXPECT_NEAR(fit2.theta_hat[1], 2.0, 1e-12);
}

TEST(L0Oracle, LargePenaltyGivesEmptySupport)
{
    const auto design = make_gaussian_design(8, 5, 2);
    const Eigen::VectorXd y = Eigen::VectorXd::Ones(8);
    const auto fit = l0_oracle_fit(design, y, 1e9, 0.05);
    EXPECT_EQ(fit.l0_count, 0);
    EXPECT_DOUBLE_EQ(fit.objective, 8.0);
}

TEST(L0Oracle, NoiselessRecovery)
{
    const auto design = make_gaussian_design(20, 10, 4);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(10);
    theta[3] = 4.0;
    theta[7] = -3.0;
    const auto fit = l0_oracle_fit(design, design.apply(theta), 0.01, 0.05);
    EXPECT_LT((fit.theta_hat - theta).norm(), 1e-10);
}

TEST(L0Oracle, LeastSquaresOnSupport)
{
    const auto design = make_gaussian_design(12, 6, 3);
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(6);
    theta[1] = 1.0;
    theta[4] = 2.0;
    const std::vector<Eigen::Index> support{1, 4};
    const Eigen::VectorXd u = least_squares_on_support(design, design.apply(theta), support);
    EXPECT_LT((u - theta).norm(), 1e-12);
}

TEST(L0Oracle, RejectsLargeP)
{
    const auto design = make_gaussian_design(4, 25, 1);
    EXPECT_THROW(l0_oracle_fit(design, Eigen::VectorXd::Zero(4), 1.0, 0.05), ConfigError);
}
