#pragma once

#include "shci/design.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shci {

enum class AuditMethod { exact, montecarlo };

std::string to_string(AuditMethod method);

/// Estimated constants c_m <= C_M with c_m ||u|| <= ||X u / sqrt(n)|| <= C_M ||u||
/// over bar_p-sparse u. Monte-Carlo estimates are optimistic: the true c_m can
/// be smaller and the true C_M larger.
struct DesignAudit {
    double c_m_estimate = 0.0;
    double C_M_estimate = 0.0;
    Eigen::Index bar_p = 1;
    AuditMethod method = AuditMethod::exact;
    int trials = 0;
    std::optional<double> compatibility_phi_sq;
    [[nodiscard]] bool optimistic() const { return method == AuditMethod::montecarlo; }
};

/// Enumeration budget of the exact audit, in supports.
inline constexpr double kExactSupportBudget = 1e6;
/// Largest p for the exhaustive support loop of compatibility_check.
inline constexpr Eigen::Index kCompatibilityMaxColumns = 12;

/// choose(n, k) as a double (inf on overflow).
double binomial(Eigen::Index n, Eigen::Index k);

/// Extreme singular values of X_U / sqrt(n) over every support U of size bar_p.
DesignAudit rip_constants_exact(const DesignOperator& design, Eigen::Index bar_p);

/// Min and max of ||X u / sqrt(n)|| / ||u|| over `trials` random bar_p-sparse u.
/// Trial t depends only on (seed, t), so more trials extend the same sample.
DesignAudit rip_constants_montecarlo(const DesignOperator& design, Eigen::Index bar_p, int trials,
                                     std::uint64_t seed);

struct CompatibilityWitness {
    std::vector<Eigen::Index> support;
    Eigen::VectorXd u;
    double lhs = 0.0;  // ||u_U||_1^2
    double rhs = 0.0;  // S ||X u||^2 / (n phi^2)
};

struct CompatibilityResult {
    bool holds = true;
    std::optional<CompatibilityWitness> witness;
    long long supports_checked = 0;
    long long probes = 0;
};

/// Looks for a violation of ||u_U||_1^2 <= S ||X u||^2 / (n phi^2) with
/// ||u_{U^c}||_1 <= 4 ||u_U||_1 over every support |U| = S. Probes are the
/// coordinate vectors e_i, the pairs e_i -+ e_j (i in U, j outside) and
/// `random_probes` random cone members per support. A pass is evidence, not
/// a certificate.
CompatibilityResult compatibility_check(const DesignOperator& design, Eigen::Index S, double phi_sq,
                                        int random_probes = 10000, std::uint64_t seed = 0xc0ffee);

} // namespace shci
