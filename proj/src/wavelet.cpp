// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/wavelet.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "roughlift/errors.hpp"

namespace roughlift {

namespace {

// Reconstruction low-pass taps (sum = sqrt 2), as published with PyWavelets.
constexpr std::array<double, 8> kDb4 = {
    0.2303778133088965,    0.7148465705529157,  0.6308807679298589,   -0.027983769416859854,
    -0.18703481171909309, 0.030841381835560764, 0.0328830116668852, -0.010597401785069032};
constexpr std::array<double, 12> kDb6 = {
    0.11154074335010947,  0.49462389039845306, 0.7511339080210954,     0.31525035170919763,
    -0.22626469396543983, -0.12976686756726194, 0.09750160558732304,   0.027522865530305727,
    -0.03158203931748603, 0.0005538422011614961, 0.004777257510945511, -0.0010773010853084796};

// Solves A x = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) < 1e-14) throw StructuralError("cascade: singular eigen system");
    for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
    x[i] = s / a[i * n + i];
  }
  return x;
}

double lerp_table(const std::vector<double>& t, double x, double h, double right) {
  if (!(x > 0.0)) return 0.0;
  const double u = x / h;
  const auto last = static_cast<double>(t.size() - 1);
  if (u >= last) return right;
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  return w == 0.0 ? t[i] : t[i] + w * (t[i + 1] - t[i]);
}

// Trapezoid primitive of a tabulated function.
std::vector<double> primitive(const std::vector<double>& f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  return out;
}

}  // namespace

double WaveletBasis::step() const { return std::ldexp(1.0, -resolution); }
double WaveletBasis::phi_at(double x) const { return lerp_table(phi, x, step(), 0.0); }
double WaveletBasis::psi_at(double x) const { return lerp_table(psi, x, step(), 0.0); }
double WaveletBasis::Phi_at(double x) const { return lerp_table(Phi, x, step(), 1.0); }
double WaveletBasis::Psi_at(double x) const { return lerp_table(Psi, x, step(), 0.0); }

WaveletFamily parse_wavelet_family(const std::string& name) {
  if (name == "db4") return WaveletFamily::db4;
  if (name == "db6") return WaveletFamily::db6;
  throw ParameterError("unknown wavelet family '" + name + "' (expected db4 or db6)");
}

WaveletBasis build_wavelet(WaveletFamily family, int resolution) {
  if (resolution < 1 || resolution > 16) throw ParameterError("wavelet resolution must lie in [1,16]");
  WaveletBasis b;
  std::vector<double> h;
  if (family == WaveletFamily::db4) {
    b.name = "db4";
    h.assign(kDb4.begin(), kDb4.end());
  } else {
    b.name = "db6";
    h.assign(kDb6.begin(), kDb6.end());
  }
  b.resolution = resolution;
  b.vanishing_moments = static_cast<int>(h.size() / 2);
  b.support = static_cast<int>(h.size()) - 1;
  b.smoothness = 1;
  for (double v : h) b.filter.push_back(std::sqrt(2.0) * v);
  const auto& a = b.filter;
  const int S = b.support;
  const auto n = static_cast<std::size_t>(S + 1);

  // phi at the integers: eigenvector of M_{jm} = a_{2j-m} for eigenvalue 1,
  // with the last equation replaced by sum phi(j) = 1.
  std::vector<double> m(n * n, 0.0), rhs(n, 0.0);
  for (int j = 0; j <= S; ++j)
    for (int k = 0; k <= S; ++k) {
      const int idx = 2 * j - k;
      m[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(k)] =
          (idx >= 0 && idx <= S ? a[static_cast<std::size_t>(idx)] : 0.0) - (j == k ? 1.0 : 0.0);
    }
  for (std::size_t k = 0; k < n; ++k) m[(n - 1) * n + k] = 1.0;
  rhs[n - 1] = 1.0;
  std::vector<double> table = solve(m, rhs);

  // Dyadic refinement phi(i/2^{l+1}) = sum_k a_k phi(i/2^l - k).
  for (int l = 0; l < resolution; ++l) {
    const std::size_t scale = std::size_t{1} << l;
    const std::size_t count = static_cast<std::size_t>(S) * (scale << 1) + 1;
    std::vector<double> next(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k <= static_cast<std::size_t>(S); ++k) {
        if (i < k * scale) break;
        const std::size_t idx = i - k * scale;
        if (idx < table.size()) s += a[k] * table[idx];
      }
      next[i] = s;
    }
    table = std::move(next);
  }
  b.phi = std::move(table);

  const std::size_t scale = std::size_t{1} << resolution;
  b.psi.assign(b.phi.size(), 0.0);
  for (std::size_t i = 0; i < b.psi.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(S); ++k) {
      if (2 * i < k * scale) break;
      const std::size_t idx = 2 * i - k * scale;
      const double g = (k % 2 == 0 ? 1.0 : -1.0) * a[static_cast<std::size_t>(S) - k];
      if (idx < b.phi.size()) s += g * b.phi[idx];
    }
    b.psi[i] = s;
  }

  const double hstep = b.step();
  b.Phi = primitive(b.phi, hstep);
  b.Psi = primitive(b.psi, hstep);
  // Remove the quadrature drift so the end values are exact.
  const double phi_end = b.Phi.back();
  for (double& v : b.Phi) v /= phi_end;
  const double psi_end = b.Psi.back();
  const auto last = static_cast<double>(b.Psi.size() - 1);
  for (std::size_t i = 0; i < b.Psi.size(); ++i) b.Psi[i] -= psi_end * static_cast<double>(i) / last;
  return b;
}

void require_regularity(const WaveletBasis& basis, const SobolevParams& prm) {
  const double need = std::abs(prm.alpha - 1.0 - (std::isinf(prm.p) ? 0.0 : 1.0 / prm.p));
  if (!(basis.smoothness > need))
    throw ParameterError("wavelet " + basis.name + " has regularity " + std::to_string(basis.smoothness) +
                         ", need more than " + std::to_string(need));
}

WaveletDiagnostics wavelet_diagnostics(const WaveletBasis& b) {
  WaveletDiagnostics d;
  const double h = b.step();
  const std::size_t scale = std::size_t{1} << b.resolution;
  const std::size_t n = b.phi.size();
  for (int k = 0; k < b.vanishing_moments; ++k) {
    // Moments about the centre of the support keep the integrand small.
    const double c = 0.5 * b.support;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      s += w * b.psi[i] * std::pow(static_cast<double>(i) * h - c, k);
    }
    d.moments.push_back(std::abs(s * h));
  }
  for (int y = 0; y <= b.support; ++y) {
    double s = 0.0;
    const std::size_t off = static_cast<std::size_t>(y) * scale;
    for (std::size_t i = off; i < n; ++i) s += b.phi[i] * b.phi[i - off];
    d.orthonormality = std::max(d.orthonormality, std::abs(s * h - (y == 0 ? 1.0 : 0.0)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < b.filter.size(); ++k) {
      if (2 * i < k * scale) break;
      const std::size_t idx = 2 * i - k * scale;
      if (idx < n) s += b.filter[k] * b.phi[idx];
    }
    d.refinement = std::max(d.refinement, std::abs(b.phi[i] - s));
  }
  for (std::size_t i = 0; i < scale; ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < n; j += scale) s += b.phi[j];
    d.partition = std::max(d.partition, std::abs(s - 1.0));
  }
  return d;
}

}  // namespace roughlift
