#pragma once

#include "shci/design.hpp"

#include <Eigen/Core>

#include <variant>
#include <vector>

namespace shci {

struct FixedStep {
    double step = 0.0;
};

struct Backtracking {
    double beta = 0.5;
};

using StepRule = std::variant<FixedStep, Backtracking>;

/// Penalized least squares ||Y - X u||^2 + kappa sqrt(log(p / delta) n) ||u||_1.
struct LassoConfig {
    double kappa = 1.0;
    double delta = 0.05;
    int max_iter = 20000;
    /// Stop once the relative objective decrease of an accepted step falls below
    /// tol and the subgradient residual is within kkt_tol of the l1 weight.
    double tol = 1e-12;
    double kkt_tol = 1e-6;
    StepRule step_rule = Backtracking{};
    /// Keep the objective after every accepted step in EstimateReport::objective_trace.
    bool record_trace = false;

    void validate() const;
};

struct EstimateReport {
    Eigen::VectorXd theta_hat;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    Eigen::Index l0_count = 0;
    std::vector<double> objective_trace;
};

/// 4 max(c, sqrt(C) / 3, c^2, C / 9) * 1.01: the smallest admissible penalty
/// constant for noise tail coefficient c and tail budget C, with 1% slack.
double default_kappa(double c, double C);

/// Risk constant E = 12 (36 kappa + 36)^2 + C^2 of the Lasso bound.
double lasso_risk_constant(double kappa, double C);

/// l1 weight kappa sqrt(log(p / delta) n).
double lasso_penalty(double kappa, double delta, Eigen::Index n, Eigen::Index p);

double lasso_objective(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                       const Eigen::Ref<const Eigen::VectorXd>& u, double penalty);

/// sign(x) max(|x| - t, 0).
double soft_threshold(double x, double t);

/// Monotone accelerated proximal gradient. Each accepted iterate lowers the
/// objective; a momentum step that would raise it is discarded and the
/// momentum restarted from the current iterate.
///
/// The step is taken on 1/2 ||Y - X u||^2, so the soft threshold per step s
/// is s times half the l1 weight. A fixed step must stay below 1 / L with L
/// the power-iteration estimate of ||X||^2; backtracking starts at 1 / L and
/// shrinks by beta until the quadratic upper bound holds.
EstimateReport lasso_fit(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const LassoConfig& cfg);

} // namespace shci
