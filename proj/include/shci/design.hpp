#pragma once

#include "shci/fourier.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace shci {

/// Known constants of the restricted-isometry-type bound
/// c_m ||u|| <= ||X u / sqrt(n)|| <= C_M ||u|| over bar_p-sparse u.
struct RipBounds {
    double c_m = 1.0;
    double C_M = 1.0;
    Eigen::Index bar_p = 1;
};

/// The design matrix X (n x p), either stored densely or as an implicit
/// partial trigonometric transform. Immutable after construction; copies
/// share the transform plans.
class DesignOperator {
public:
    static DesignOperator dense(Eigen::MatrixXd values,
                                std::optional<RipBounds> rip = std::nullopt);

    /// Rows `frequencies` (distinct, any order; stored sorted) of
    /// sqrt(p) * T where T is the orthonormal RealFourierTransform of size p.
    static DesignOperator partial_fourier(Eigen::Index p, std::vector<Eigen::Index> frequencies,
                                          std::optional<RipBounds> rip = std::nullopt);

    [[nodiscard]] Eigen::Index rows() const { return rows_; }
    [[nodiscard]] Eigen::Index cols() const { return cols_; }

    [[nodiscard]] bool is_dense() const;
    /// Throws ConfigError for implicit operators.
    [[nodiscard]] const Eigen::MatrixXd& dense_values() const;
    /// Empty for dense operators.
    [[nodiscard]] const std::vector<Eigen::Index>& frequency_indices() const;
    [[nodiscard]] const std::optional<RipBounds>& rip_bounds() const { return rip_; }

    [[nodiscard]] Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& u) const;
    [[nodiscard]] Eigen::VectorXd adjoint(const Eigen::Ref<const Eigen::VectorXd>& v) const;

    /// Columns of X listed in `support` as a dense n x |support| block.
    [[nodiscard]] Eigen::MatrixXd columns(std::span<const Eigen::Index> support) const;
    /// Full dense copy of X. Intended for small operators.
    [[nodiscard]] Eigen::MatrixXd materialize() const;

private:
    struct Fourier {
        std::vector<Eigen::Index> frequencies;
        std::shared_ptr<const RealFourierTransform> transform;
    };

    DesignOperator(Eigen::Index rows, Eigen::Index cols, std::variant<Eigen::MatrixXd, Fourier> kind,
                   std::optional<RipBounds> rip);

    Eigen::Index rows_;
    Eigen::Index cols_;
    std::variant<Eigen::MatrixXd, Fourier> kind_;
    std::optional<RipBounds> rip_;
};

/// Dense n x p design with i.i.d. N(0, 1) entries (no 1/sqrt(n) factor).
DesignOperator make_gaussian_design(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

/// n distinct uniformly random rows of sqrt(p) * T; requires 1 <= n <= p.
DesignOperator make_partial_fourier_design(Eigen::Index n, Eigen::Index p, std::uint64_t seed);

/// Power-iteration estimate of the squared operator norm ||X||^2.
double operator_norm_sq_estimate(const DesignOperator& design, int iterations = 20,
                                 std::uint64_t seed = 0x5eed);

} // namespace shci
