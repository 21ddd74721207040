#pragma once

#include "shci/design.hpp"
#include "shci/lasso.hpp"

#include <Eigen/Core>

#include <span>

namespace shci {

/// Exhaustive enumeration is limited to this many columns.
inline constexpr Eigen::Index kL0MaxColumns = 24;

/// Minimum-norm least squares fit of y on the columns in `support`, scattered
/// back to a length-p vector.
Eigen::VectorXd least_squares_on_support(const DesignOperator& design,
                                         const Eigen::Ref<const Eigen::VectorXd>& y,
                                         std::span<const Eigen::Index> support);

/// ||Y - X u||^2 + kappa log(p / delta) |supp(u)|.
double l0_objective(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                    const Eigen::Ref<const Eigen::VectorXd>& u, double kappa, double delta);

/// Exact minimiser of the l0-penalised least squares objective by enumerating
/// every support. Supports whose objective is within a relative 1e-10 of the
/// minimum count as ties; among them the smallest support wins, then the
/// lexicographically smallest index list. The result therefore does not
/// depend on enumeration order.
EstimateReport l0_oracle_fit(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                             double kappa, double delta);

} // namespace shci
