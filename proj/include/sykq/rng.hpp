#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace sykq::rng {

// Philox4x32-10 counter-based generator.  Any (counter, key) pair maps to four
// independent 32-bit words, so draws are addressable: the coupling for
// (seed, index rank, sample, stream) never depends on evaluation order.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    std::array<std::uint32_t, 4> next;
    next[0] = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
    next[1] = static_cast<std::uint32_t>(p1);
    next[2] = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
    next[3] = static_cast<std::uint32_t>(p0);
    ctr = next;
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

inline std::array<std::uint32_t, 4> block_at(std::uint64_t seed, std::uint64_t a,
                                             std::uint64_t b, std::uint64_t c) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(a),
      static_cast<std::uint32_t>(b),
      static_cast<std::uint32_t>(b >> 32),
      static_cast<std::uint32_t>(c),
  };
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  return philox4x32(ctr, key);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
  // 52 random bits plus a half step: every operation is exact, so the value
  // stays strictly inside (0, 1) even at the extremes
  return (static_cast<double>(u >> 12) + 0.5) * 0x1p-52;
}

// Box-Muller on one counter block
inline std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t a,
                                               std::uint64_t b, std::uint64_t c) {
  auto w = block_at(seed, a, b, c);
  double u1 = to_unit(w[0], w[1]);
  double u2 = to_unit(w[2], w[3]);
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 6.283185307179586476925287 * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

inline double gaussian(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return gaussian_pair(seed, a, b, c).first;
}

inline double rademacher(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return (block_at(seed, a, b, c)[0] & 1) ? 1.0 : -1.0;
}

}  // namespace sykq::rng
