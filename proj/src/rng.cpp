// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/rng.hpp"

#include <cmath>
#include <numbers>

namespace roughlift {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter c, Key k) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

std::array<double, 4> normals_from_block(const Philox4x32::Counter& b) {
  std::array<double, 4> out;
  for (int i = 0; i < 2; ++i) {
    const double r = std::sqrt(-2.0 * std::log(u32_to_open_unit(b[2 * i])));
    const double th = 2.0 * std::numbers::pi * u32_to_open_unit(b[2 * i + 1]);
    out[2 * i] = r * std::cos(th);
    out[2 * i + 1] = r * std::sin(th);
  }
  return out;
}

}  // namespace roughlift
