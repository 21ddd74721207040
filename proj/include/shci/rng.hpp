#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace shci {

/// Counter-based generator: output i is a bijective mix of (key, i), so
/// streams derived with split() are independent of each other and of the
/// order in which they are consumed.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0);

    /// Child stream identified by `stream`; same (seed, stream) gives the
    /// same child regardless of how much the parent has been used.
    [[nodiscard]] Rng split(std::uint64_t stream) const;

    result_type operator()();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    double uniform();  // [0, 1)
    double normal();   // standard normal
    std::uint64_t below(std::uint64_t bound);  // uniform on [0, bound)

    /// `count` distinct indices from [0, population), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                        std::size_t count);

    [[nodiscard]] std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

} // namespace shci
