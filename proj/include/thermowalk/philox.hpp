#pragma once

#include <array>
#include <cstdint>

#include "thermowalk/grid.hpp"

namespace thermowalk {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Every draw in the simulators is a pure function of (seed, particle, step),
/// so results do not depend on how particles are scheduled across threads.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter generate(Counter c, Key k) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
            c = Counter{static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
                        static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return c;
    }
};

namespace rng {

inline constexpr Philox4x32::Key key_of(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

inline constexpr Philox4x32::Counter counter_of(std::uint64_t step, std::uint64_t stream) {
    return {static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32), static_cast<std::uint32_t>(stream),
            static_cast<std::uint32_t>(stream >> 32)};
}

/// Block index reserved for drawing initial positions; step blocks never reach it.
inline constexpr std::uint64_t kInitStep = ~std::uint64_t{0};

/// Words 0 and 1 of the Philox block at counter (block, stream) as one 64-bit value.
inline constexpr std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
    const auto out = Philox4x32::generate(counter_of(block, stream), key_of(seed));
    return (std::uint64_t{out[0]} << 32) | out[1];
}

/// 64 random bits for step `step` of a stream. One Philox block serves two
/// consecutive steps: even steps take words 0-1 of block step/2, odd steps
/// take words 2-3.
inline constexpr std::uint64_t step_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    const auto out = Philox4x32::generate(counter_of(step >> 1, stream), key_of(seed));
    return (step & 1) ? (std::uint64_t{out[2]} << 32) | out[3] : (std::uint64_t{out[0]} << 32) | out[1];
}

/// Uniform double in [0, 1) from the top 53 bits.
inline constexpr double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1p-53; }

/// Unit vector from 64 random bits. In 2D the angle is uniform on [0, 2 pi);
/// in 1D the direction is +1 or -1 by the top bit.
Point direction_from_bits(std::uint64_t bits, int dim);

/// Unit vector at the given angle (radians), for deterministic tests.
Point direction_from_angle(double angle);

}  // namespace rng
}  // namespace thermowalk
