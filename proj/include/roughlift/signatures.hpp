// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "roughlift/algebra.hpp"
#include "roughlift/paths.hpp"

namespace roughlift {

inline constexpr int kMaxSignatureLevel = 3;

GroupElement segment_signature(std::span<const double> dx, int level);

// Product of segment signatures over [s,t]; s and t must be grid times.
GroupElement pw_linear_signature(const SampledPath& path, double s, double t, int level);

// Piecewise-linear interpolation through the depth-m points, sampled back
// on the path's own grid.
SampledPath dyadic_interpolate(const SampledPath& path, int m);

// S(X^m)_{0,t} at every grid time of `path`.
GroupPath canonical_lift(const SampledPath& path, int m, int level = 2);
// Signature of the path itself (m = depth).
GroupPath canonical_lift(const SampledPath& path);

// pi_2(S(X^m)) over the k-th depth-n dyadic interval (k is 1-based), from
// the closed forms: a scaled square when n >= m, a square plus the area
// sum over contained fine increments when n <= m. Returned row-major d x d.
std::vector<double> second_level_coarse(const SampledPath& path, int m, int n, std::size_t k);

// Increments of X at depth <= n, and dilated copies of the containing
// depth-n increment below: depth j > n gets dilation(., 2^{n-j}).
IncrementPyramid approx_geodesic_interpolation(const GroupPath& x, int n);

}  // namespace roughlift
