#pragma once

// Philox4x32-10 counter-based generator. Every (key, counter) pair maps to
// an independent block of four 32-bit words, so a sample's random numbers
// depend only on (seed, sample index, element index) and never on how work
// is split across threads.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace pcrange {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += w0;
      key[1] += w1;
    }
    const std::uint64_t p0 = std::uint64_t{m0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{m1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

/// Uniform on (0, 1] with 53 random bits from two words.
constexpr double uniform_open0(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t bits = (std::uint64_t{a >> 5} << 26) | (b >> 6);
  return (static_cast<double>(bits) + 1.0) * 0x1p-53;
}

/// Circular complex Gaussian with E|w|^2 = variance, by Box-Muller on one
/// Philox block addressed by (seed, stream, element).
inline std::complex<double> complex_normal(std::uint64_t seed, std::uint64_t stream,
                                           std::uint32_t element, double variance) {
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const PhiloxCounter ctr{element, static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32), 0u};
  const auto r = philox4x32(ctr, key);
  const double u1 = uniform_open0(r[0], r[1]);
  const double u2 = uniform_open0(r[2], r[3]);
  const double radius = std::sqrt(-variance * std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(phase), radius * std::sin(phase)};
}

}  // namespace pcrange
