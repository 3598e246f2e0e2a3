#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Output is a pure function of (key, counter), so any block of the stream
// can be produced independently and in any order.

#include <array>
#include <cstdint>

namespace ickit {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

namespace philox_detail {
inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
inline constexpr int kRounds = 10;
} // namespace philox_detail

constexpr PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) noexcept {
    using namespace philox_detail;
    for (int round = 0; round < kRounds; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// Maps the high 32 bits and the top 20 bits of `lo` to a double in (0, 1).
/// Every step is exact, so SIMD variants reproduce it bit for bit.
constexpr double uniform_from_words(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits52 = (std::uint64_t{hi} << 20) | (lo >> 12);
    return (static_cast<double>(bits52) + 0.5) * 0x1.0p-52;
}

} // namespace ickit
