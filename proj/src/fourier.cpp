#include "shci/fourier.hpp"

#include "shci/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace shci {

namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(Eigen::Index n)
        : data(static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<std::size_t>(n))))
    {
        if (data == nullptr) {
            throw NumericError("fftw_malloc failed");
        }
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    double* data;
};

} // namespace

struct RealFourierTransform::Plans {
    fftw_plan to_halfcomplex = nullptr;
    fftw_plan from_halfcomplex = nullptr;
};

RealFourierTransform::RealFourierTransform(Eigen::Index size)
    : size_(size), plans_(std::make_unique<Plans>())
{
    if (size < 1) {
        throw ConfigError("RealFourierTransform: size must be positive");
    }
    FftwBuffer in(size);
    FftwBuffer out(size);
    const int n = static_cast<int>(size);
    std::lock_guard lock(planner_mutex());
    plans_->to_halfcomplex = fftw_plan_r2r_1d(n, in.data, out.data, FFTW_R2HC, FFTW_ESTIMATE);
    plans_->from_halfcomplex = fftw_plan_r2r_1d(n, in.data, out.data, FFTW_HC2R, FFTW_ESTIMATE);
    if (plans_->to_halfcomplex == nullptr || plans_->from_halfcomplex == nullptr) {
        throw NumericError("FFTW planning failed");
    }
}

RealFourierTransform::~RealFourierTransform()
{
    std::lock_guard lock(planner_mutex());
    if (plans_->to_halfcomplex != nullptr) {
        fftw_destroy_plan(plans_->to_halfcomplex);
    }
    if (plans_->from_halfcomplex != nullptr) {
        fftw_destroy_plan(plans_->from_halfcomplex);
    }
}

// Half-complex layout (FFTW): h[0] = sum x, h[k] = sum x cos, h[p-k] = -sum x sin
// for 0 < k < p/2, and h[p/2] = sum x (-1)^j when p is even.
Eigen::VectorXd RealFourierTransform::forward(const Eigen::Ref<const Eigen::VectorXd>& x) const
{
    const Eigen::Index p = size_;
    if (x.size() != p) {
        throw ConfigError("RealFourierTransform::forward: length mismatch");
    }
    FftwBuffer in(p);
    FftwBuffer out(p);
    Eigen::Map<Eigen::VectorXd>(in.data, p) = x;
    fftw_execute_r2r(plans_->to_halfcomplex, in.data, out.data);

    const double* h = out.data;
    const double edge = 1.0 / std::sqrt(static_cast<double>(p));
    const double mid = std::sqrt(2.0 / static_cast<double>(p));
    Eigen::VectorXd a(p);
    a[0] = h[0] * edge;
    for (Eigen::Index k = 1; 2 * k < p; ++k) {
        a[2 * k - 1] = h[k] * mid;
        a[2 * k] = -h[p - k] * mid;
    }
    if (p % 2 == 0 && p > 1) {
        a[p - 1] = h[p / 2] * edge;
    }
    return a;
}

Eigen::VectorXd RealFourierTransform::inverse(const Eigen::Ref<const Eigen::VectorXd>& a) const
{
    const Eigen::Index p = size_;
    if (a.size() != p) {
        throw ConfigError("RealFourierTransform::inverse: length mismatch");
    }
    FftwBuffer in(p);
    FftwBuffer out(p);
    double* h = in.data;
    const double edge = 1.0 / std::sqrt(static_cast<double>(p));
    const double mid = 1.0 / std::sqrt(2.0 * static_cast<double>(p));
    h[0] = a[0] * edge;
    for (Eigen::Index k = 1; 2 * k < p; ++k) {
        h[k] = a[2 * k - 1] * mid;
        h[p - k] = -a[2 * k] * mid;
    }
    if (p % 2 == 0 && p > 1) {
        h[p / 2] = a[p - 1] * edge;
    }
    fftw_execute_r2r(plans_->from_halfcomplex, in.data, out.data);
    return Eigen::Map<const Eigen::VectorXd>(out.data, p);
}

double trig_transform_entry(Eigen::Index size, Eigen::Index row, Eigen::Index col)
{
    const double p = static_cast<double>(size);
    if (row == 0) {
        return 1.0 / std::sqrt(p);
    }
    if (size % 2 == 0 && row == size - 1) {
        return (col % 2 == 0 ? 1.0 : -1.0) / std::sqrt(p);
    }
    const Eigen::Index k = (row + 1) / 2;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * col % size) / p;
    const double scale = std::sqrt(2.0 / p);
    return row % 2 == 1 ? scale * std::cos(angle) : scale * std::sin(angle);
}

} // namespace shci
