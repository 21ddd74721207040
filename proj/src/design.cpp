#include "shci/design.hpp"

#include "shci/errors.hpp"
#include "shci/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shci {

namespace {

void check_rip(const std::optional<RipBounds>& rip)
{
    if (rip && !(rip->c_m > 0.0 && rip->c_m <= rip->C_M && rip->bar_p >= 1)) {
        throw ConfigError("rip_bounds require 0 < c_m <= C_M and bar_p >= 1");
    }
}

} // namespace

DesignOperator::DesignOperator(Eigen::Index rows, Eigen::Index cols,
                               std::variant<Eigen::MatrixXd, Fourier> kind,
                               std::optional<RipBounds> rip)
    : rows_(rows), cols_(cols), kind_(std::move(kind)), rip_(rip)
{
}

DesignOperator DesignOperator::dense(Eigen::MatrixXd values, std::optional<RipBounds> rip)
{
    if (values.rows() < 1 || values.cols() < 1) {
        throw ConfigError("dense design must have at least one row and one column");
    }
    if (!values.allFinite()) {
        throw NumericError("dense design contains non-finite entries");
    }
    check_rip(rip);
    const auto rows = values.rows();
    const auto cols = values.cols();
    return DesignOperator(rows, cols, std::move(values), rip);
}

DesignOperator DesignOperator::partial_fourier(Eigen::Index p, std::vector<Eigen::Index> frequencies,
                                               std::optional<RipBounds> rip)
{
    if (p < 1 || frequencies.empty()) {
        throw ConfigError("partial Fourier design needs p >= 1 and at least one frequency");
    }
    std::sort(frequencies.begin(), frequencies.end());
    if (std::adjacent_find(frequencies.begin(), frequencies.end()) != frequencies.end()) {
        throw ConfigError("partial Fourier frequencies must be distinct");
    }
    if (frequencies.front() < 0 || frequencies.back() >= p) {
        throw ConfigError("partial Fourier frequencies must lie in [0, p)");
    }
    check_rip(rip);
    const auto rows = static_cast<Eigen::Index>(frequencies.size());
    Fourier f{std::move(frequencies), std::make_shared<const RealFourierTransform>(p)};
    return DesignOperator(rows, p, std::move(f), rip);
}

bool DesignOperator::is_dense() const { return std::holds_alternative<Eigen::MatrixXd>(kind_); }

const Eigen::MatrixXd& DesignOperator::dense_values() const
{
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&kind_)) {
        return *m;
    }
    throw ConfigError("design operator is implicit; dense values unavailable");
}

const std::vector<Eigen::Index>& DesignOperator::frequency_indices() const
{
    static const std::vector<Eigen::Index> none;
    if (const auto* f = std::get_if<Fourier>(&kind_)) {
        return f->frequencies;
    }
    return none;
}

Eigen::VectorXd DesignOperator::apply(const Eigen::Ref<const Eigen::VectorXd>& u) const
{
    if (u.size() != cols_) {
        throw ConfigError("apply: expected vector of length " + std::to_string(cols_));
    }
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&kind_)) {
        return *m * u;
    }
    const auto& f = std::get<Fourier>(kind_);
    const Eigen::VectorXd coeffs = f.transform->forward(u);
    const double scale = std::sqrt(static_cast<double>(cols_));
    Eigen::VectorXd out(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
        out[i] = scale * coeffs[f.frequencies[static_cast<std::size_t>(i)]];
    }
    return out;
}

Eigen::VectorXd DesignOperator::adjoint(const Eigen::Ref<const Eigen::VectorXd>& v) const
{
    if (v.size() != rows_) {
        throw ConfigError("adjoint: expected vector of length " + std::to_string(rows_));
    }
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&kind_)) {
        return m->transpose() * v;
    }
    const auto& f = std::get<Fourier>(kind_);
    const double scale = std::sqrt(static_cast<double>(cols_));
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(cols_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
        coeffs[f.frequencies[static_cast<std::size_t>(i)]] = scale * v[i];
    }
    return f.transform->inverse(coeffs);
}

Eigen::MatrixXd DesignOperator::columns(std::span<const Eigen::Index> support) const
{
    Eigen::MatrixXd out(rows_, static_cast<Eigen::Index>(support.size()));
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&kind_)) {
        for (std::size_t k = 0; k < support.size(); ++k) {
            out.col(static_cast<Eigen::Index>(k)) = m->col(support[k]);
        }
        return out;
    }
    const auto& f = std::get<Fourier>(kind_);
    const double scale = std::sqrt(static_cast<double>(cols_));
    for (std::size_t k = 0; k < support.size(); ++k) {
        for (Eigen::Index i = 0; i < rows_; ++i) {
            out(i, static_cast<Eigen::Index>(k)) =
                scale * trig_transform_entry(cols_, f.frequencies[static_cast<std::size_t>(i)], support[k]);
        }
    }
    return out;
}

Eigen::MatrixXd DesignOperator::materialize() const
{
    if (const auto* m = std::get_if<Eigen::MatrixXd>(&kind_)) {
        return *m;
    }
    std::vector<Eigen::Index> all(static_cast<std::size_t>(cols_));
    for (Eigen::Index j = 0; j < cols_; ++j) {
        all[static_cast<std::size_t>(j)] = j;
    }
    return columns(all);
}

DesignOperator make_gaussian_design(Eigen::Index n, Eigen::Index p, std::uint64_t seed)
{
    if (n < 1 || p < 1) {
        throw ConfigError("make_gaussian_design: n and p must be positive");
    }
    Rng rng(seed);
    Eigen::MatrixXd values(n, p);
    double* data = values.data();
    const Eigen::Index total = n * p;
    for (Eigen::Index k = 0; k < total; ++k) {
        data[k] = rng.normal();
    }
    return DesignOperator::dense(std::move(values));
}

DesignOperator make_partial_fourier_design(Eigen::Index n, Eigen::Index p, std::uint64_t seed)
{
    if (n < 1 || p < 1) {
        throw ConfigError("make_partial_fourier_design: n and p must be positive");
    }
    if (n > p) {
        throw ConfigError("make_partial_fourier_design: n must not exceed p");
    }
    Rng rng(seed);
    const auto picked = rng.sample_without_replacement(static_cast<std::size_t>(p),
                                                       static_cast<std::size_t>(n));
    std::vector<Eigen::Index> rows(picked.begin(), picked.end());
    return DesignOperator::partial_fourier(p, std::move(rows));
}

double operator_norm_sq_estimate(const DesignOperator& design, int iterations, std::uint64_t seed)
{
    Rng rng(seed);
    Eigen::VectorXd v(design.cols());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        v[j] = rng.normal();
    }
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd w = design.adjoint(design.apply(v));
        const double norm = w.norm();
        if (norm == 0.0) {
            return estimate;
        }
        estimate = v.dot(w);
        v = w / norm;
    }
    return estimate;
}

} // namespace shci
