#pragma once

#include <array>
#include <cstdint>

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every 128-bit block is addressed by (seed, stream, index): the key is the
// 64-bit seed, the counter carries the block index and the stream id. Draws
// are therefore position-addressable and trivially parallel: no state, no
// sequencing, identical output for any evaluation order.

namespace ppower::rng {

namespace detail {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& ctr,
                       const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

// Ten rounds over an explicit counter/key pair.
inline std::array<std::uint32_t, 4> philox4x32(
    std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += detail::kWeyl0;
            key[1] += detail::kWeyl1;
        }
        detail::round_once(counter, key);
    }
    return counter;
}

// 64 bits of the block addressed by (seed, stream, index).
inline std::uint64_t block64(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t index) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    const auto out = philox4x32(ctr, key);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Uniform double in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index) {
    return static_cast<double>(block64(seed, stream, index) >> 11) *
           0x1.0p-53;
}

}  // namespace ppower::rng
