#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace sparsesum {

/// SplitMix64. The whole state is one 64-bit word, so a seed fixes every
/// sampled CSV bit for bit on any platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection, so no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("SplitMix64::below: bound must be positive");
        }
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t v = (*this)();
        while (v >= limit) {
            v = (*this)();
        }
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace sparsesum
