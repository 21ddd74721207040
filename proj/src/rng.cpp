#include "shci/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace shci {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : key_(mix64(seed + kGolden)) {}

Rng Rng::split(std::uint64_t stream) const
{
    Rng child(0);
    child.key_ = mix64(key_ ^ mix64((stream + 1) * kGolden));
    return child;
}

Rng::result_type Rng::operator()()
{
    return mix64(key_ + (++counter_) * kGolden);
}

double Rng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::normal() { return gauss_(*this); }

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0) {
        throw std::invalid_argument("Rng::below: bound must be positive");
    }
    // rejection sampling removes modulo bias
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t r = (*this)();
    while (r >= limit) {
        r = (*this)();
    }
    return r % bound;
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t population,
                                                         std::size_t count)
{
    if (count > population) {
        throw std::invalid_argument("sample_without_replacement: count exceeds population");
    }
    std::vector<std::size_t> pool(population);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(below(population - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

} // namespace shci
