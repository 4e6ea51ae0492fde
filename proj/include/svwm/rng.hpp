#ifndef SVWM_RNG_HPP
#define SVWM_RNG_HPP

#include <array>
#include <cstdint>

namespace svwm {

// Deterministic generator behind every seeded operation in this project.
// The algorithm is part of the output contract: the same seed must yield the
// same stream on every platform and in every build.
//
//   state      xoshiro256++ (Blackman & Vigna), state expanded from the
//              64-bit seed by four splitmix64 steps
//   uniforms   53-bit mantissa draws: (next() >> 11) * 2^-53 in [0, 1)
//   gaussians  Box-Muller on one (0,1] and one [0,1) uniform, pair-cached;
//              the cosine branch is returned first
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double next_unit();

    // Standard normal.
    double next_gaussian();

private:
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace svwm

#endif // SVWM_RNG_HPP
