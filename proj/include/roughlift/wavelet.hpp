// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "roughlift/norms.hpp"

namespace roughlift {

enum class WaveletFamily { db4, db6 };

// Compactly supported orthonormal Daubechies wavelet, tabulated by the
// cascade algorithm on the grid i 2^{-L} over its support [0, support].
//   phi(x) = sum_k a_k phi(2x - k),  psi(x) = sum_k (-1)^k a_{2M-1-k} phi(2x - k)
// Primitives Phi, Psi start at 0 at x = 0; Phi -> 1 and Psi -> 0 at the
// right end of the support.
struct WaveletBasis {
  std::string name;
  int resolution = 0;         // L
  int support = 0;            // 2M - 1
  int vanishing_moments = 0;  // M
  int smoothness = 0;         // phi, psi in C^smoothness
  std::vector<double> filter;  // a_k, sum a_k = 2
  std::vector<double> phi, psi, Phi, Psi;

  double step() const;
  // Linear interpolation in the tables; zero left of the support, the end
  // value right of it.
  double phi_at(double x) const;
  double psi_at(double x) const;
  double Phi_at(double x) const;
  double Psi_at(double x) const;
};

WaveletBasis build_wavelet(WaveletFamily family = WaveletFamily::db6, int resolution = 12);
WaveletFamily parse_wavelet_family(const std::string& name);

// ParameterError unless smoothness > |alpha - 1 - 1/p|.
void require_regularity(const WaveletBasis& basis, const SobolevParams& prm);

struct WaveletDiagnostics {
  std::vector<double> moments;  // |int psi t^k| for k = 0..vanishing_moments-1
  double orthonormality = 0.0;  // max_y |<phi, phi(.-y)> - delta_{y,0}|
  double refinement = 0.0;      // max_x |phi(x) - sum_k a_k phi(2x-k)| on the half grid
  double partition = 0.0;       // max_x |sum_y phi(x-y) - 1|
};
WaveletDiagnostics wavelet_diagnostics(const WaveletBasis& basis);

}  // namespace roughlift
