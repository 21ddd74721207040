#include "shci/sparsity.hpp"

#include "shci/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace shci {

double ordered_tail_sum(const Eigen::Ref<const Eigen::VectorXd>& u, Eigen::Index S)
{
    if (S < 0) {
        throw ConfigError("ordered_tail_sum: S must be nonnegative");
    }
    const Eigen::Index p = u.size();
    if (S >= p) {
        return 0.0;
    }
    std::vector<double> sq(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        sq[static_cast<std::size_t>(j)] = u[j] * u[j];
    }
    // the S largest squares go to the front; summing the rest in ascending
    // order keeps the result independent of the input permutation
    std::nth_element(sq.begin(), sq.begin() + S, sq.end(), std::greater<>());
    std::sort(sq.begin() + S, sq.end());
    double tail = 0.0;
    for (auto it = sq.begin() + S; it != sq.end(); ++it) {
        tail += *it;
    }
    return tail;
}

double separation_distance(const Eigen::Ref<const Eigen::VectorXd>& u, Eigen::Index S0)
{
    return std::sqrt(ordered_tail_sum(u, S0));
}

double band_tail_budget(const SparsityBand& band, Eigen::Index p, Eigen::Index n)
{
    return band.C * static_cast<double>(band.S) * std::log(static_cast<double>(p) / band.delta) /
           static_cast<double>(n);
}

void validate_band(const SparsityBand& band, Eigen::Index p)
{
    if (band.S < 1 || band.bar_p < band.S) {
        throw ConfigError("sparsity band requires 1 <= S <= bar_p");
    }
    if (!(band.delta > 0.0 && band.delta < 1.0)) {
        throw ConfigError("sparsity band requires delta in (0, 1)");
    }
    if (!(band.C > 0.0) || !(band.B > 0.0)) {
        throw ConfigError("sparsity band requires positive C and B");
    }
    if (band.S > p) {
        throw ConfigError("sparsity band requires S <= p");
    }
}

bool band_membership(const Eigen::Ref<const Eigen::VectorXd>& u, const SparsityBand& band,
                     Eigen::Index n)
{
    const Eigen::Index p = u.size();
    validate_band(band, p);
    if (n < 1) {
        throw ConfigError("band_membership: n must be positive");
    }
    if (band.bar_p < p) {
        Eigen::Index nonzeros = 0;
        for (Eigen::Index j = 0; j < p; ++j) {
            nonzeros += u[j] != 0.0 ? 1 : 0;
        }
        if (nonzeros > band.bar_p) {
            return false;
        }
    }
    if (std::isfinite(band.B) && u.squaredNorm() > band.B * band.B) {
        return false;
    }
    return ordered_tail_sum(u, band.S) <= band_tail_budget(band, p, n);
}

Eigen::Index count_nonzero(const Eigen::Ref<const Eigen::VectorXd>& u)
{
    return (u.array().abs() > kNumericalZero).count();
}

} // namespace shci
