#pragma once

// Counter-based random numbers.  Philox4x32-10 (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11) maps a 128-bit
// counter and 64-bit key to four 32-bit words.  Because every draw addresses
// its own counter block, samples are reproducible independently of thread
// count or evaluation order.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace wigsim::rng {

struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kMult0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMult1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = Counter{hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// 53-bit uniform in [0, 1) from two output words.
inline double uniform53(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t{hi} << 32) | lo;
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Fills `out` with standard normals attributed to one logical draw.
// Counter layout: [pair index within the draw, low/high draw index,
// substream id]; the seed is the Philox key.  Each counter block feeds one
// Box-Muller pair, so consumers always cost ceil(len/2) blocks.
inline void fill_normals(std::uint64_t seed, std::uint32_t substream,
                         std::uint64_t draw_index, std::span<double> out) {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto draw_lo = static_cast<std::uint32_t>(draw_index);
  const auto draw_hi = static_cast<std::uint32_t>(draw_index >> 32);
  for (std::size_t pair = 0; 2 * pair < out.size(); ++pair) {
    const auto words = Philox4x32::block(
        {static_cast<std::uint32_t>(pair), draw_lo, draw_hi, substream}, key);
    const double u1 = uniform53(words[0], words[1]);
    const double u2 = uniform53(words[2], words[3]);
    // log(1 - u1) keeps the argument strictly inside (0, 1]
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    out[2 * pair] = r * std::cos(theta);
    if (2 * pair + 1 < out.size()) out[2 * pair + 1] = r * std::sin(theta);
  }
}

}  // namespace wigsim::rng
