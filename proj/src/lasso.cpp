#include "shci/lasso.hpp"

#include "shci/errors.hpp"
#include "shci/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shci {

void LassoConfig::validate() const
{
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw ConfigError("lasso kappa must be positive and finite");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("lasso delta must lie in (0, 1)");
    }
    if (max_iter < 1) {
        throw ConfigError("lasso max_iter must be positive");
    }
    if (!(tol > 0.0)) {
        throw ConfigError("lasso tol must be positive");
    }
    if (!(kkt_tol > 0.0)) {
        throw ConfigError("lasso kkt_tol must be positive");
    }
    if (const auto* fixed = std::get_if<FixedStep>(&step_rule); fixed && !(fixed->step > 0.0)) {
        throw ConfigError("fixed lasso step must be positive");
    }
    if (const auto* bt = std::get_if<Backtracking>(&step_rule); bt && !(bt->beta > 0.0 && bt->beta < 1.0)) {
        throw ConfigError("backtracking beta must lie in (0, 1)");
    }
}

double default_kappa(double c, double C)
{
    if (!(c >= 0.0) || !(C > 0.0)) {
        throw ConfigError("default_kappa needs c >= 0 and C > 0");
    }
    return 4.0 * std::max({c, std::sqrt(C) / 3.0, c * c, C / 9.0}) * 1.01;
}

double lasso_risk_constant(double kappa, double C)
{
    const double a = 36.0 * kappa + 36.0;
    return 12.0 * a * a + C * C;
}

double lasso_penalty(double kappa, double delta, Eigen::Index n, Eigen::Index p)
{
    return kappa * std::sqrt(std::log(static_cast<double>(p) / delta) * static_cast<double>(n));
}

double lasso_objective(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                       const Eigen::Ref<const Eigen::VectorXd>& u, double penalty)
{
    return (y - design.apply(u)).squaredNorm() + penalty * u.lpNorm<1>();
}

double soft_threshold(double x, double t)
{
    if (x > t) {
        return x - t;
    }
    if (x < -t) {
        return x + t;
    }
    return 0.0;
}

namespace {

// largest violation of 0 in 2 X^T (X u - y) + penalty * subdifferential(||u||_1)
double kkt_residual(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                    const Eigen::VectorXd& u, const Eigen::VectorXd& u_fit, double penalty)
{
    const Eigen::VectorXd g = 2.0 * design.adjoint(u_fit - y);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        const double v = u[j] != 0.0 ? std::abs(g[j] + std::copysign(penalty, u[j])) : std::abs(g[j]) - penalty;
        worst = std::max(worst, v);
    }
    return worst;
}

} // namespace

EstimateReport lasso_fit(const DesignOperator& design, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const LassoConfig& cfg)
{
    cfg.validate();
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (y.size() != n) {
        throw ConfigError("lasso_fit: y must have length n = " + std::to_string(n));
    }
    if (!y.allFinite()) {
        throw NumericError("lasso_fit: observations contain non-finite values");
    }

    const double penalty = lasso_penalty(cfg.kappa, cfg.delta, n, p);
    const double lipschitz = operator_norm_sq_estimate(design);
    const auto* fixed = std::get_if<FixedStep>(&cfg.step_rule);
    double step = 0.0;
    double beta = 0.5;
    if (fixed != nullptr) {
        if (lipschitz > 0.0 && fixed->step >= 1.0 / lipschitz) {
            throw ConfigError("fixed lasso step " + std::to_string(fixed->step) +
                              " is not below 1/L = " + std::to_string(1.0 / lipschitz));
        }
        step = fixed->step;
    } else {
        beta = std::get<Backtracking>(cfg.step_rule).beta;
        step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
    }

    EstimateReport report;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd x_fit = Eigen::VectorXd::Zero(n);  // X x
    double objective = y.squaredNorm();

    Eigen::VectorXd z = x;
    Eigen::VectorXd z_fit = x_fit;
    bool has_momentum = false;
    double t = 1.0;

    Eigen::VectorXd candidate(p);
    Eigen::VectorXd candidate_fit(n);
    for (int it = 0; it < cfg.max_iter; ++it) {
        report.iterations = it + 1;
        const Eigen::VectorXd residual = z_fit - y;
        const Eigen::VectorXd gradient = design.adjoint(residual);
        const double smooth_z = 0.5 * residual.squaredNorm();

        double smooth_candidate = 0.0;
        for (;;) {
            const double threshold = step * penalty * 0.5;
            for (Eigen::Index j = 0; j < p; ++j) {
                candidate[j] = soft_threshold(z[j] - step * gradient[j], threshold);
            }
            candidate_fit = design.apply(candidate);
            smooth_candidate = 0.5 * (candidate_fit - y).squaredNorm();
            if (fixed != nullptr) {
                break;
            }
            const Eigen::VectorXd d = candidate - z;
            const double bound = smooth_z + gradient.dot(d) + d.squaredNorm() / (2.0 * step);
            if (smooth_candidate <= bound + 1e-12 * std::abs(bound)) {
                break;
            }
            step *= beta;
            if (step < std::numeric_limits<double>::min()) {
                throw NumericError("lasso_fit: backtracking step underflow");
            }
        }
        const double candidate_objective = 2.0 * smooth_candidate + penalty * candidate.lpNorm<1>();
        if (!std::isfinite(candidate_objective)) {
            throw NumericError("lasso_fit: objective became non-finite");
        }

        if (candidate_objective > objective) {
            if (has_momentum) {
                z = x;
                z_fit = x_fit;
                t = 1.0;
                has_momentum = false;
                continue;
            }
            // a plain proximal step from x cannot improve: x is optimal to
            // working precision
            report.converged = true;
            break;
        }

        const double decrease = (objective - candidate_objective) /
                                std::max(objective, std::numeric_limits<double>::min());
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double momentum = (t - 1.0) / t_next;
        z = candidate + momentum * (candidate - x);
        z_fit = candidate_fit + momentum * (candidate_fit - x_fit);
        has_momentum = momentum > 0.0;
        t = t_next;
        x = candidate;
        x_fit = candidate_fit;
        objective = candidate_objective;
        if (cfg.record_trace) {
            report.objective_trace.push_back(objective);
        }
        if (decrease < cfg.tol) {
            if (kkt_residual(design, y, x, x_fit, penalty) <= cfg.kkt_tol * penalty) {
                report.converged = true;
                break;
            }
            // slow progress away from optimality: drop the momentum
            z = x;
            z_fit = x_fit;
            t = 1.0;
            has_momentum = false;
        }
    }

    report.objective = (y - design.apply(x)).squaredNorm() + penalty * x.lpNorm<1>();
    report.l0_count = count_nonzero(x);
    report.theta_hat = std::move(x);
    return report;
}

} // namespace shci
