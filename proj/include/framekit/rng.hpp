#ifndef FRAMEKIT_RNG_HPP
#define FRAMEKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "framekit/complex_matrix.hpp"

namespace framekit {

/// SplitMix64: the 64-bit mixing generator with increment 0x9E3779B97F4A7C15
/// and the finalizer pair (0xBF58476D1CE4E5B9, 0x94D049BB133111EB). The full
/// recipe is spelled out so a run can be reproduced from the seed alone in
/// any language:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output z ^ (z >> 31)
/// Uniform doubles are ((output >> 11) + 0.5) * 2^-53, strictly inside (0,1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard complex Gaussian via one Box-Muller pair: with u1, u2 the next
    /// two uniform doubles, returns sqrt(-2 ln u1) * (cos(2 pi u2) +
    /// i sin(2 pi u2)).
    cx next_gaussian() {
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return cx(r * std::cos(a), r * std::sin(a));
    }

private:
    std::uint64_t state_;
};

} // namespace framekit

#endif
