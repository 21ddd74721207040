#pragma once

#include <Eigen/Core>

#include <limits>

namespace shci {

/// Parameters of the enlarged class of approximately S-sparse vectors:
/// at most bar_p nonzeros, ||u|| <= B, and squared distance to the
/// S-sparse vectors at most C S log(p / delta) / n.
struct SparsityBand {
    Eigen::Index S = 1;
    double C = 1.0;
    double B = std::numeric_limits<double>::infinity();
    Eigen::Index bar_p = 1;
    double delta = 0.05;
};

/// Squared l2 distance from u to the set of S-sparse vectors: the sum of
/// squares of all but the S largest-magnitude entries.
double ordered_tail_sum(const Eigen::Ref<const Eigen::VectorXd>& u, Eigen::Index S);

/// ||u - l0(S0)||_2.
double separation_distance(const Eigen::Ref<const Eigen::VectorXd>& u, Eigen::Index S0);

/// Tail budget C S log(p / delta) / n of the band.
double band_tail_budget(const SparsityBand& band, Eigen::Index p, Eigen::Index n);

/// Membership in the band. bar_p >= p makes the nonzero-count condition vacuous.
bool band_membership(const Eigen::Ref<const Eigen::VectorXd>& u, const SparsityBand& band,
                     Eigen::Index n);

/// Throws ConfigError unless 1 <= S <= min(bar_p, p), delta in (0, 1) and C, B > 0.
/// bar_p above p is allowed and behaves like bar_p = p.
void validate_band(const SparsityBand& band, Eigen::Index p);

/// Entries with magnitude above 1e-12.
Eigen::Index count_nonzero(const Eigen::Ref<const Eigen::VectorXd>& u);

inline constexpr double kNumericalZero = 1e-12;

} // namespace shci
