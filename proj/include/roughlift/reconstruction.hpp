// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "roughlift/norms.hpp"
#include "roughlift/paths.hpp"
#include "roughlift/wavelet.hpp"

namespace roughlift {

// A path on [-1, 2] with the spacing of its depth-J source. Row r sits at
// time (r - 2^J) 2^{-J}; the window [0,1] is rows 2^J..2^{J+1}. Beyond the
// window the path is held constant.
struct ExtendedPath {
  int dim = 0;
  int depth = 0;
  std::vector<double> values;      // (3 2^J + 1) rows of dim
  std::vector<double> cumulative;  // trapezoid integral from -1 to each row

  std::size_t rows() const { return values.size() / static_cast<std::size_t>(dim); }
  std::size_t origin() const { return std::size_t{1} << depth; }
  double step() const { return std::ldexp(1.0, -depth); }
  // Value at grid index k relative to the origin, clamped to the window.
  double at(long k, int i) const;
  // int_{-1}^{t} of coordinate i for any real t (constant extension beyond
  // the window).
  double integral(double t, int i) const;
};

// Even reflection: X(-t) = X(t) and X(1+t) = X(1-t).
ExtendedPath extend_path(const SampledPath& x);

// <W', psi^n_y> and <W', phi_y> for the extension of the 1-dim path w at
// y = m 2^{-n}. W is piecewise linear, so each grid cell contributes its
// slope times the exact cell integral of the wavelet.
double wavelet_coeff_dW(const SampledPath& w, const WaveletBasis& basis, int n, long m);
double father_coeff_dW(const SampledPath& w, const WaveletBasis& basis, long m);

// Nonzero coefficients of R(Y W') whose support meets (0,1):
//   a_{n,m} = mean(Y on [y - 2^{-n}, y + 2^{-n}]) <W', psi^n_y>,  y = m 2^{-n}
// and the father terms b_m at level 0. Each level is sorted by m.
struct ReconstructionSeries {
  int depth = 0;
  int j_max = 0;
  std::vector<std::pair<long, double>> father;
  std::vector<std::vector<std::pair<long, double>>> mother;  // n = 0..j_max
};

ReconstructionSeries reconstruct(const SampledPath& y, const SampledPath& w, const SobolevParams& prm,
                                 const WaveletBasis& basis, int j_max);

// Z(t) - Z(0) on the series' grid for the primitive Z of the series, and
// the same split by level: entry 0 is the father part, entry n+1 level n.
SampledPath primitive_Z(const ReconstructionSeries& series, const WaveletBasis& basis);
std::vector<std::vector<double>> primitive_by_level(const ReconstructionSeries& series,
                                                    const WaveletBasis& basis);

struct ReconstructionLift {
  GroupPath path;
  int j_max = 0;
  // Bound on |XX_{s,t}| lost by truncating the series at j_max, from the
  // next four levels and a geometric tail.
  double eps_truncation = 0.0;
};

// Default truncation 2 * depth; pass j_max >= 0 to override.
ReconstructionLift lift2_reconstruction(const SampledPath& x, const SobolevParams& prm,
                                        const WaveletBasis& basis, int j_max = -1);

struct LipschitzProbe {
  double dist = 0.0;        // rho(L(X), L(X~)), integral form
  double input_dist = 0.0;  // |X - X~| in W^alpha_p, integral form
  double ratio = 0.0;       // dist / input_dist, 0 when both vanish
};

LipschitzProbe lift_map_lipschitz_probe(const SampledPath& x, const SampledPath& xt, const SobolevParams& prm,
                                        const WaveletBasis& basis, int j_max = -1);

}  // namespace roughlift
