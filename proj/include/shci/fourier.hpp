#pragma once

#include <Eigen/Core>

#include <memory>

namespace shci {

/// Real orthonormal trigonometric transform of length p.
///
/// Row 0 is the constant row 1/sqrt(p). For k = 1, 2, ... rows 2k-1 and 2k
/// are sqrt(2/p) cos(2 pi k j / p) and sqrt(2/p) sin(2 pi k j / p). When p is
/// even the last row is the alternating row (-1)^j / sqrt(p). The matrix is
/// orthogonal, so inverse() is also the adjoint of forward().
///
/// Both directions run through FFTW half-complex plans in O(p log p).
class RealFourierTransform {
public:
    explicit RealFourierTransform(Eigen::Index size);
    ~RealFourierTransform();

    RealFourierTransform(const RealFourierTransform&) = delete;
    RealFourierTransform& operator=(const RealFourierTransform&) = delete;

    [[nodiscard]] Eigen::Index size() const { return size_; }

    [[nodiscard]] Eigen::VectorXd forward(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    [[nodiscard]] Eigen::VectorXd inverse(const Eigen::Ref<const Eigen::VectorXd>& coeffs) const;

private:
    struct Plans;
    Eigen::Index size_;
    std::unique_ptr<Plans> plans_;
};

/// Entry (row, col) of the transform by direct evaluation; used to
/// materialize small operators.
double trig_transform_entry(Eigen::Index size, Eigen::Index row, Eigen::Index col);

} // namespace shci
