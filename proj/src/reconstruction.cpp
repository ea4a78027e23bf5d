// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlift/errors.hpp"

namespace roughlift {

double ExtendedPath::at(long k, int i) const {
  const long n = static_cast<long>(rows()) - 1;
  const long r = std::clamp(k + static_cast<long>(origin()), 0L, n);
  return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)];
}

double ExtendedPath::integral(double t, int i) const {
  const double h = step();
  const std::size_t n = rows() - 1;
  const auto d = static_cast<std::size_t>(dim);
  const auto ui = static_cast<std::size_t>(i);
  auto v = [&](std::size_t r) { return values[r * d + ui]; };
  const double u = (t + 1.0) / h;
  if (u <= 0.0) return u * h * v(0);
  if (u >= static_cast<double>(n)) return cumulative[n * d + ui] + (u - static_cast<double>(n)) * h * v(n);
  const double full = std::floor(u);
  const auto c = static_cast<std::size_t>(full);
  const double w = u - full;
  return cumulative[c * d + ui] + h * w * (v(c) + 0.5 * w * (v(c + 1) - v(c)));
}

ExtendedPath extend_path(const SampledPath& x) {
  ExtendedPath e;
  e.dim = x.dim();
  e.depth = x.depth();
  const std::size_t n = std::size_t{1} << x.depth();
  const auto d = static_cast<std::size_t>(x.dim());
  e.values.resize((3 * n + 1) * d);
  for (std::size_t r = 0; r <= 3 * n; ++r) {
    std::size_t src;
    if (r < n)
      src = n - r;
    else if (r <= 2 * n)
      src = r - n;
    else
      src = 3 * n - r;
    for (std::size_t i = 0; i < d; ++i) e.values[r * d + i] = x.at(src, static_cast<int>(i));
  }
  const double h = e.step();
  e.cumulative.assign(e.values.size(), 0.0);
  for (std::size_t r = 1; r <= 3 * n; ++r)
    for (std::size_t i = 0; i < d; ++i)
      e.cumulative[r * d + i] = e.cumulative[(r - 1) * d + i] + 0.5 * h * (e.values[(r - 1) * d + i] + e.values[r * d + i]);
  return e;
}

namespace {

// Slope jumps of the extended 1-dim path: jump[r] = s_r - s_{r-1} at row r,
// with zero slope outside the window.
std::vector<double> slope_jumps(const ExtendedPath& e) {
  const std::size_t n = e.rows() - 1;
  const double inv_h = 1.0 / e.step();
  std::vector<double> slope(n);
  for (std::size_t c = 0; c < n; ++c) slope[c] = (e.values[c + 1] - e.values[c]) * inv_h;
  std::vector<double> jump(n + 1);
  for (std::size_t r = 0; r <= n; ++r) jump[r] = (r < n ? slope[r] : 0.0) - (r > 0 ? slope[r - 1] : 0.0);
  return jump;
}

// <W', psi^n_{m 2^-n}> = -2^{-n/2} sum_r jump_r Psi(2^n tau_r - m), by
// summation by parts over the cells.
double mother_from_jumps(const std::vector<double>& jump, const ExtendedPath& e, const WaveletBasis& b, int n,
                         long m) {
  const long origin = static_cast<long>(e.origin());
  double s = 0.0;
  // Rows whose time lies strictly inside the support (m, m+S) 2^{-n}.
  const double lo = std::ldexp(static_cast<double>(m), e.depth - n);
  const double hi = std::ldexp(static_cast<double>(m + b.support), e.depth - n);
  const long r0 = std::max(0L, static_cast<long>(std::floor(lo)) + 1 + origin);
  const long r1 = std::min(static_cast<long>(jump.size()) - 1, static_cast<long>(std::ceil(hi)) - 1 + origin);
  for (long r = r0; r <= r1; ++r) {
    const double j = jump[static_cast<std::size_t>(r)];
    if (j == 0.0) continue;
    s += j * b.Psi_at(std::ldexp(static_cast<double>(r - origin), n - e.depth) - static_cast<double>(m));
  }
  return -s * std::exp2(-0.5 * n);
}

double father_from_jumps(const std::vector<double>& jump, const ExtendedPath& e, const WaveletBasis& b, long m) {
  const long origin = static_cast<long>(e.origin());
  double s = 0.0;
  for (std::size_t r = 0; r < jump.size(); ++r) {
    if (jump[r] == 0.0) continue;
    s += jump[r] * b.Phi_at(std::ldexp(static_cast<double>(static_cast<long>(r) - origin), -e.depth) -
                            static_cast<double>(m));
  }
  return -s;
}

ExtendedPath extend_scalar(const SampledPath& w, const char* what) {
  if (w.dim() != 1) throw StructuralError(std::string(what) + ": expected a 1-dim path");
  return extend_path(w);
}

double mean_over(const ExtendedPath& e, double a, double b) { return (e.integral(b, 0) - e.integral(a, 0)) / (b - a); }

void validate_reconstruction_params(const SobolevParams& prm, const WaveletBasis& basis) {
  prm.validate(true);
  if (!(prm.alpha > 1.0 / 3.0 && prm.alpha < 0.5))
    throw ParameterError("reconstruction lift needs alpha in (1/3, 1/2), got alpha = " + std::to_string(prm.alpha));
  require_regularity(basis, prm);
}

}  // namespace

double wavelet_coeff_dW(const SampledPath& w, const WaveletBasis& basis, int n, long m) {
  if (n < 0) throw StructuralError("wavelet level must be >= 0");
  const ExtendedPath e = extend_scalar(w, "wavelet_coeff_dW");
  return mother_from_jumps(slope_jumps(e), e, basis, n, m);
}

double father_coeff_dW(const SampledPath& w, const WaveletBasis& basis, long m) {
  const ExtendedPath e = extend_scalar(w, "father_coeff_dW");
  return father_from_jumps(slope_jumps(e), e, basis, m);
}

ReconstructionSeries reconstruct(const SampledPath& y, const SampledPath& w, const SobolevParams& prm,
                                 const WaveletBasis& basis, int j_max) {
  validate_reconstruction_params(prm, basis);
  if (y.depth() != w.depth()) throw StructuralError("reconstruct: Y and W live on different grids");
  if (j_max < 0) throw ParameterError("j_max must be >= 0");
  const ExtendedPath ey = extend_scalar(y, "reconstruct");
  const ExtendedPath ew = extend_scalar(w, "reconstruct");
  const std::vector<double> jump = slope_jumps(ew);
  const long S = basis.support;
  const long origin = static_cast<long>(ew.origin());
  const int J = w.depth();

  ReconstructionSeries out;
  out.depth = J;
  out.j_max = j_max;
  for (long m = 1 - S; m <= 0; ++m) {
    const double c = father_from_jumps(jump, ew, basis, m);
    const double a = c == 0.0 ? 0.0 : mean_over(ey, static_cast<double>(m) - 1.0, static_cast<double>(m) + 1.0) * c;
    if (a != 0.0) out.father.emplace_back(m, a);
  }
  out.mother.resize(static_cast<std::size_t>(j_max) + 1);
  std::vector<long> ms;
  for (int n = 0; n <= j_max; ++n) {
    // Candidate m: support (m, m+S) 2^{-n} meets (0,1) and contains a row
    // with a slope jump; otherwise the vanishing moment kills the term.
    ms.clear();
    const long m_lo = 1 - S, m_hi = (1L << n) - 1;
    for (std::size_t r = 0; r < jump.size(); ++r) {
      if (jump[r] == 0.0) continue;
      const double x = std::ldexp(static_cast<double>(static_cast<long>(r) - origin), n - J);
      const long a = std::max(m_lo, static_cast<long>(std::floor(x)) - S + 1);
      const long b = std::min(m_hi, static_cast<long>(std::ceil(x)) - 1);
      for (long m = a; m <= b; ++m) ms.push_back(m);
    }
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    auto& level = out.mother[static_cast<std::size_t>(n)];
    const double r = std::ldexp(1.0, -n);
    for (long m : ms) {
      const double c = mother_from_jumps(jump, ew, basis, n, m);
      if (c == 0.0) continue;
      const double yc = static_cast<double>(m) * r;
      const double a = mean_over(ey, yc - r, yc + r) * c;
      if (a != 0.0) level.emplace_back(m, a);
    }
  }
  return out;
}

std::vector<std::vector<double>> primitive_by_level(const ReconstructionSeries& s, const WaveletBasis& basis) {
  const int J = s.depth;
  const std::size_t N = std::size_t{1} << J;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(s.j_max) + 2, std::vector<double>(N + 1, 0.0));
  auto& f = out[0];
  for (const auto& [m, b] : s.father) {
    const double base = basis.Phi_at(-static_cast<double>(m));
    for (std::size_t k = 0; k <= N; ++k)
      f[k] += b * (basis.Phi_at(std::ldexp(static_cast<double>(k), -J) - static_cast<double>(m)) - base);
  }
  const long S = basis.support;
  for (int n = 0; n <= s.j_max; ++n) {
    auto& z = out[static_cast<std::size_t>(n) + 1];
    const double scale = std::exp2(-0.5 * n);
    double shift = 0.0;
    for (const auto& [m, a] : s.mother[static_cast<std::size_t>(n)]) {
      const double c = a * scale;
      shift += c * basis.Psi_at(-static_cast<double>(m));
      // Grid points with 2^n t_k in (m, m+S).
      const double lo = std::ldexp(static_cast<double>(m), J - n);
      const double hi = std::ldexp(static_cast<double>(m + S), J - n);
      const long k0 = std::max(0L, static_cast<long>(std::floor(lo)) + 1);
      const long k1 = std::min(static_cast<long>(N), static_cast<long>(std::ceil(hi)) - 1);
      for (long k = k0; k <= k1; ++k)
        z[static_cast<std::size_t>(k)] +=
            c * basis.Psi_at(std::ldexp(static_cast<double>(k), n - J) - static_cast<double>(m));
    }
    for (double& v : z) v -= shift;
  }
  return out;
}

SampledPath primitive_Z(const ReconstructionSeries& s, const WaveletBasis& basis) {
  const auto levels = primitive_by_level(s, basis);
  std::vector<double> z(levels[0].size(), 0.0);
  for (const auto& l : levels)
    for (std::size_t k = 0; k < z.size(); ++k) z[k] += l[k];
  return SampledPath(1, s.depth, std::move(z));
}

namespace {

struct PairPrimitive {
  std::vector<double> z;  // Z(t_k) - Z(0), truncated at j_max
  double eps = 0.0;
};

PairPrimitive pair_primitive(const SampledPath& y, const SampledPath& w, const SobolevParams& prm,
                             const WaveletBasis& basis, int j_max) {
  constexpr int kTailLevels = 4;
  const ReconstructionSeries s = reconstruct(y, w, prm, basis, j_max + kTailLevels);
  const auto levels = primitive_by_level(s, basis);
  PairPrimitive out;
  out.z.assign(levels[0].size(), 0.0);
  for (std::size_t l = 0; l <= static_cast<std::size_t>(j_max) + 1; ++l)
    for (std::size_t k = 0; k < out.z.size(); ++k) out.z[k] += levels[l][k];
  std::vector<double> sup;
  for (std::size_t l = static_cast<std::size_t>(j_max) + 2; l < levels.size(); ++l) {
    double m = 0.0;
    for (double v : levels[l]) m = std::max(m, std::abs(v));
    sup.push_back(m);
  }
  double rho = 0.0, total = 0.0;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    total += sup[i];
    if (i > 0 && sup[i - 1] > 0.0) rho = std::max(rho, sup[i] / sup[i - 1]);
  }
  rho = std::min(rho, 0.9);
  // Z_{s,t} = Z(t) - Z(s) doubles the pointwise tail.
  out.eps = 2.0 * (total + sup.back() * rho / (1.0 - rho));
  return out;
}

}  // namespace

ReconstructionLift lift2_reconstruction(const SampledPath& x, const SobolevParams& prm, const WaveletBasis& basis,
                                        int j_max) {
  validate_reconstruction_params(prm, basis);
  const int J = x.depth();
  const int jm = j_max < 0 ? 2 * J : j_max;
  const int d = x.dim();
  const std::size_t n = x.size();
  const auto ud = static_cast<std::size_t>(d);
  std::vector<SampledPath> comp;
  for (int i = 0; i < d; ++i) comp.push_back(x.component(i));

  // XX^{ij}_{0,t} = Z^{ij}(t) - X^i_0 X^j_{0,t}; only i != j is needed since
  // the symmetric correction F overwrites the symmetric part.
  std::vector<std::vector<double>> xx(ud * ud);
  ReconstructionLift out;
  out.j_max = jm;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      PairPrimitive pp = pair_primitive(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)], prm,
                                        basis, jm);
      out.eps_truncation = std::max(out.eps_truncation, pp.eps);
      auto& v = xx[static_cast<std::size_t>(i) * ud + static_cast<std::size_t>(j)];
      v = std::move(pp.z);
      for (std::size_t k = 0; k < n; ++k) v[k] -= x.at(0, i) * (x.at(k, j) - x.at(0, j));
    }

  std::vector<GroupElement> els;
  els.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    TruncatedTensor t(d, 2);
    t.data()[0] = 1.0;
    auto l1 = t.level_span(1);
    auto l2 = t.level_span(2);
    for (std::size_t i = 0; i < ud; ++i) l1[i] = x.at(k, static_cast<int>(i)) - x.at(0, static_cast<int>(i));
    // XX + F = (XX^{ij} - XX^{ji}) / 2 + x^i x^j / 2.
    for (std::size_t i = 0; i < ud; ++i)
      for (std::size_t j = 0; j < ud; ++j) {
        const double anti = i == j ? 0.0 : 0.5 * (xx[i * ud + j][k] - xx[j * ud + i][k]);
        l2[i * ud + j] = anti + 0.5 * l1[i] * l1[j];
      }
    els.emplace_back(std::move(t));
  }
  out.path = GroupPath(d, 2, J, std::move(els));
  return out;
}

LipschitzProbe lift_map_lipschitz_probe(const SampledPath& x, const SampledPath& xt, const SobolevParams& prm,
                                        const WaveletBasis& basis, int j_max) {
  if (x.dim() != xt.dim() || x.depth() != xt.depth())
    throw StructuralError("lipschitz probe: paths live on different grids");
  LipschitzProbe r;
  const ReconstructionLift a = lift2_reconstruction(x, prm, basis, j_max);
  const ReconstructionLift b = lift2_reconstruction(xt, prm, basis, j_max);
  r.dist = inhom_dist(a.path, b.path, prm, false).value;
  std::vector<double> diff(x.values());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= xt.values()[i];
  r.input_dist = sobolev_norm_integral(SampledPath(x.dim(), x.depth(), std::move(diff)), prm).value;
  r.ratio = r.input_dist > 0.0 ? r.dist / r.input_dist : 0.0;
  return r;
}

}  // namespace roughlift
