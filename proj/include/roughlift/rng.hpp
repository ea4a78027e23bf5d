// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace roughlift {

// Philox4x32-10 (Salmon et al. 2011): multipliers 0xD2511F53, 0xCD9E8D57,
// Weyl key increments 0x9E3779B9, 0xBB67AE85, ten rounds.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
  static Key key_from_seed(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

// Uniform in the open interval (0, 1).
inline double u32_to_open_unit(std::uint32_t x) { return (static_cast<double>(x) + 0.5) * 0x1p-32; }

// Four standard normals from one Philox block, by Box-Muller on the pairs
// (x0, x1) and (x2, x3).
std::array<double, 4> normals_from_block(const Philox4x32::Counter& block);

}  // namespace roughlift
