#include "shci/design_audit.hpp"

#include "shci/errors.hpp"
#include "shci/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace shci {

namespace {

// advances `idx` to the next k-combination of [0, n); false when exhausted
bool next_combination(std::vector<Eigen::Index>& idx, Eigen::Index n)
{
    const auto k = static_cast<Eigen::Index>(idx.size());
    for (Eigen::Index i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (Eigen::Index j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

std::vector<Eigen::Index> first_combination(Eigen::Index k)
{
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    return idx;
}

void check_bar_p(const DesignOperator& design, Eigen::Index bar_p)
{
    if (bar_p < 1 || bar_p > design.cols()) {
        throw ConfigError("bar_p must lie in [1, p]");
    }
}

} // namespace

std::string to_string(AuditMethod method)
{
    return method == AuditMethod::exact ? "exact" : "montecarlo";
}

double binomial(Eigen::Index n, Eigen::Index k)
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (Eigen::Index i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

DesignAudit rip_constants_exact(const DesignOperator& design, Eigen::Index bar_p)
{
    check_bar_p(design, bar_p);
    const Eigen::Index p = design.cols();
    if (binomial(p, bar_p) > kExactSupportBudget) {
        throw ConfigError("exact audit needs choose(p, bar_p) <= 1e6; use the Monte-Carlo audit");
    }
    const Eigen::MatrixXd x = design.materialize() / std::sqrt(static_cast<double>(design.rows()));
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    auto idx = first_combination(bar_p);
    Eigen::MatrixXd sub(x.rows(), bar_p);
    do {
        for (Eigen::Index k = 0; k < bar_p; ++k) {
            sub.col(k) = x.col(idx[k]);
        }
        const Eigen::MatrixXd gram = sub.transpose() * sub;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        lo = std::min(lo, std::sqrt(std::max(ev[0], 0.0)));
        hi = std::max(hi, std::sqrt(std::max(ev[bar_p - 1], 0.0)));
    } while (next_combination(idx, p));

    DesignAudit audit;
    audit.c_m_estimate = lo;
    audit.C_M_estimate = hi;
    audit.bar_p = bar_p;
    audit.method = AuditMethod::exact;
    return audit;
}

DesignAudit rip_constants_montecarlo(const DesignOperator& design, Eigen::Index bar_p, int trials,
                                     std::uint64_t seed)
{
    check_bar_p(design, bar_p);
    if (trials < 1) {
        throw ConfigError("Monte-Carlo audit needs trials >= 1");
    }
    const Rng root(seed);
    const double sqrt_n = std::sqrt(static_cast<double>(design.rows()));
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(design.cols());
    for (int t = 0; t < trials; ++t) {
        Rng r = root.split(static_cast<std::uint64_t>(t));
        const auto support = r.sample_without_replacement(static_cast<std::size_t>(design.cols()),
                                                          static_cast<std::size_t>(bar_p));
        u.setZero();
        for (auto j : support) {
            u[static_cast<Eigen::Index>(j)] = r.normal();
        }
        const double norm = u.norm();
        if (norm == 0.0) {
            continue;
        }
        const double ratio = design.apply(u).norm() / (sqrt_n * norm);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    DesignAudit audit;
    audit.c_m_estimate = lo;
    audit.C_M_estimate = hi;
    audit.bar_p = bar_p;
    audit.method = AuditMethod::montecarlo;
    audit.trials = trials;
    return audit;
}

CompatibilityResult compatibility_check(const DesignOperator& design, Eigen::Index S, double phi_sq,
                                        int random_probes, std::uint64_t seed)
{
    const Eigen::Index p = design.cols();
    if (!(phi_sq > 0.0) || !std::isfinite(phi_sq)) {
        throw ConfigError("compatibility_check needs phi^2 > 0");
    }
    if (p > kCompatibilityMaxColumns) {
        throw ConfigError("compatibility_check supports p <= 12");
    }
    if (S < 1 || S > p) {
        throw ConfigError("compatibility_check needs 1 <= S <= p");
    }
    if (random_probes < 0) {
        throw ConfigError("compatibility_check needs a nonnegative probe count");
    }

    const Eigen::MatrixXd x = design.materialize();
    const double n = static_cast<double>(x.rows());
    const double factor = static_cast<double>(S) / (n * phi_sq);
    const Rng root(seed);

    CompatibilityResult result;
    std::vector<char> in_support(static_cast<std::size_t>(p));
    auto idx = first_combination(S);
    long long support_id = 0;
    do {
        std::fill(in_support.begin(), in_support.end(), 0);
        for (auto j : idx) {
            in_support[static_cast<std::size_t>(j)] = 1;
        }
        std::vector<Eigen::Index> outside;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (in_support[static_cast<std::size_t>(j)] == 0) {
                outside.push_back(j);
            }
        }
        ++result.supports_checked;

        auto probe = [&](const Eigen::VectorXd& u) {
            ++result.probes;
            double l1 = 0.0;
            for (auto j : idx) {
                l1 += std::abs(u[j]);
            }
            const double lhs = l1 * l1;
            const double rhs = factor * (x * u).squaredNorm();
            if (lhs > rhs * (1.0 + 1e-10) + 1e-300) {
                result.holds = false;
                result.witness = CompatibilityWitness{idx, u, lhs, rhs};
                return false;
            }
            return true;
        };

        Eigen::VectorXd u = Eigen::VectorXd::Zero(p);
        for (auto i : idx) {
            u.setZero();
            u[i] = 1.0;
            if (!probe(u)) {
                return result;
            }
            for (auto j : outside) {
                for (double sign : {-1.0, 1.0}) {
                    u.setZero();
                    u[i] = 1.0;
                    u[j] = sign;
                    if (!probe(u)) {
                        return result;
                    }
                }
            }
        }

        Rng r = root.split(static_cast<std::uint64_t>(support_id));
        for (int k = 0; k < random_probes; ++k) {
            u.setZero();
            double l1_in = 0.0;
            for (auto i : idx) {
                u[i] = r.normal();
                l1_in += std::abs(u[i]);
            }
            if (!outside.empty()) {
                // off-support mass: uniform fraction of the cone limit, with
                // a quarter of the probes on the cone boundary
                const double budget = 4.0 * l1_in * (k % 4 == 0 ? 1.0 : r.uniform());
                double l1_out = 0.0;
                for (auto j : outside) {
                    u[j] = r.normal();
                    l1_out += std::abs(u[j]);
                }
                if (l1_out > 0.0) {
                    for (auto j : outside) {
                        u[j] *= budget / l1_out;
                    }
                }
            }
            if (!probe(u)) {
                return result;
            }
        }
        ++support_id;
    } while (next_combination(idx, p));
    return result;
}

} // namespace shci
