#include "shci/l0_oracle.hpp"

#include "shci/errors.hpp"
#include "shci/sparsity.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace shci {

namespace {

std::vector<Eigen::Index> mask_to_support(std::uint32_t mask)
{
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; mask != 0; ++j, mask >>= 1U) {
        if ((mask & 1U) != 0U) {
            support.push_back(j);
        }
    }
    return support;
}

// true when mask a precedes mask b: smaller support, then lexicographically
// smaller sorted index list
bool support_precedes(std::uint32_t a, std::uint32_t b)
{
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    if (ca != cb) {
        return ca < cb;
    }
    const auto sa = mask_to_support(a);
    const auto sb = mask_to_support(b);
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

struct Candidate {
    double objective;
    std::uint32_t mask;
};

} // namespace

Eigen::VectorXd least_squares_on_support(const DesignOperator& design,
                                         const Eigen::Ref<const Eigen::VectorXd>& y,
                                         std::span<const Eigen::Index> support)
{
    Eigen::VectorXd u = Eigen::VectorXd::Zero(design.cols());
    if (support.empty()) {
        return u;
    }
    const Eigen::MatrixXd sub = design.columns(support);
    const Eigen::VectorXd coef = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(sub).solve(y);
    for (std::size_t k = 0; k < support.size(); ++k) {
        u[support[k]] = coef[static_cast<Eigen::Index>(k)];
    }
    return u;
}

double l0_objective(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                    const Eigen::Ref<const Eigen::VectorXd>& u, double kappa, double delta)
{
    const double weight = kappa * std::log(static_cast<double>(design.cols()) / delta);
    return (y - design.apply(u)).squaredNorm() + weight * static_cast<double>(count_nonzero(u));
}

EstimateReport l0_oracle_fit(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                             double kappa, double delta)
{
    const Eigen::Index p = design.cols();
    if (p > kL0MaxColumns) {
        throw ConfigError("l0_oracle_fit: p = " + std::to_string(p) + " exceeds the enumeration limit of " +
                          std::to_string(kL0MaxColumns));
    }
    if (y.size() != design.rows()) {
        throw ConfigError("l0_oracle_fit: y must have length n");
    }
    if (!(kappa >= 0.0) || !(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("l0_oracle_fit: need kappa >= 0 and delta in (0, 1)");
    }

    const double weight = kappa * std::log(static_cast<double>(p) / delta);
    const double tie_tol = 1e-10 * std::max(1.0, y.squaredNorm());
    const Eigen::MatrixXd x = design.materialize();

    // keep every support within tie_tol of the running minimum; anything
    // pruned is also outside tie_tol of the final minimum
    std::vector<Candidate> near_best;
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t total = std::uint64_t{1} << static_cast<unsigned>(p);
    std::vector<Eigen::Index> cols;
    for (std::uint64_t m = 0; m < total; ++m) {
        const auto mask = static_cast<std::uint32_t>(m);
        double rss = y.squaredNorm();
        if (mask != 0U) {
            cols = mask_to_support(mask);
            Eigen::MatrixXd sub(x.rows(), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t k = 0; k < cols.size(); ++k) {
                sub.col(static_cast<Eigen::Index>(k)) = x.col(cols[k]);
            }
            const Eigen::VectorXd coef = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(sub).solve(y);
            rss = (y - sub * coef).squaredNorm();
        }
        const double obj = rss + weight * static_cast<double>(std::popcount(mask));
        if (obj > best + tie_tol) {
            continue;
        }
        if (obj < best) {
            best = obj;
            std::erase_if(near_best, [&](const Candidate& c) { return c.objective > best + tie_tol; });
        }
        near_best.push_back({obj, mask});
    }

    std::uint32_t chosen = near_best.front().mask;
    for (const auto& c : near_best) {
        if (support_precedes(c.mask, chosen)) {
            chosen = c.mask;
        }
    }

    const auto support = mask_to_support(chosen);
    EstimateReport report;
    report.theta_hat = least_squares_on_support(design, y, support);
    report.objective = (y - design.apply(report.theta_hat)).squaredNorm() +
                       weight * static_cast<double>(support.size());
    report.iterations = static_cast<int>(std::min<std::uint64_t>(total, std::numeric_limits<int>::max()));
    report.converged = true;
    report.l0_count = static_cast<Eigen::Index>(support.size());
    return report;
}

} // namespace shci
