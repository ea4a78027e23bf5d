// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlift/errors.hpp"

namespace roughlift {

void SobolevParams::validate(bool rough) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("alpha must lie in (0,1), got " + std::to_string(alpha));
  if (!(p > 1.0)) throw ParameterError("p must lie in (1,inf], got " + std::to_string(p));
  if (!(q >= 1.0)) throw ParameterError("q must lie in [1,inf], got " + std::to_string(q));
  if (rough && !(alpha * p > 1.0))
    throw ParameterError("rough path norms need alpha*p > 1 (alpha=" + std::to_string(alpha) +
                         ", p=" + std::to_string(p) + ")");
}

int SobolevParams::rough_level() const { return static_cast<int>(std::floor(1.0 / alpha)); }

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

void require_finite_p(const SobolevParams& prm, const char* what) {
  if (std::isinf(prm.p))
    throw StructuralError(std::string(what) + " needs finite p; use holder_defect for p = inf");
}

// S_j = sum_m d(j,m)^p for j = 0..depth, each summed in m order.
template <class Dist>
std::vector<double> scale_sums(int depth, double p, Dist dist) {
  std::vector<double> s(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) {
    CompensatedSum acc;
    for (std::size_t m = 0; m < (std::size_t{1} << j); ++m) acc.add(std::pow(dist(j, m), p));
    s[static_cast<std::size_t>(j)] = acc.value();
  }
  return s;
}

NormReport sobolev_from_sums(const std::vector<double>& sums, const SobolevParams& prm,
                             int depth) {
  NormReport r{"sobolev_dyadic", prm.alpha, prm.p, prm.p, depth, 0.0, {}};
  CompensatedSum total;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    const double w = std::exp2(static_cast<double>(j) * (prm.alpha * prm.p - 1.0));
    r.per_scale.push_back(w * sums[j]);
    total.add(r.per_scale.back());
  }
  r.value = std::pow(total.value(), 1.0 / prm.p);
  return r;
}

NormReport besov_from_sums(const std::vector<double>& sums, const SobolevParams& prm, int depth) {
  NormReport r{"besov_dyadic", prm.alpha, prm.p, prm.q, depth, 0.0, {}};
  const double s = prm.alpha - 1.0 / prm.p;
  if (std::isinf(prm.q)) {
    double best = 0.0;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      r.per_scale.push_back(std::exp2(static_cast<double>(j) * s) * std::pow(sums[j], 1.0 / prm.p));
      best = std::max(best, r.per_scale.back());
    }
    r.value = best;
    return r;
  }
  CompensatedSum total;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    r.per_scale.push_back(std::exp2(static_cast<double>(j) * prm.q * s) *
                          std::pow(sums[j], prm.q / prm.p));
    total.add(r.per_scale.back());
  }
  r.value = std::pow(total.value(), 1.0 / prm.q);
  return r;
}

double euclid(const SampledPath& x, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double dv = x.at(b, i) - x.at(a, i);
    s += dv * dv;
  }
  return std::sqrt(s);
}

std::vector<double> path_sums(const SampledPath& x, double p) {
  return scale_sums(x.depth(), p, [&](int j, std::size_t m) {
    const std::size_t step = std::size_t{1} << (x.depth() - j);
    return euclid(x, m * step, (m + 1) * step);
  });
}

std::vector<double> pyramid_sums(const IncrementPyramid& x, double p) {
  return scale_sums(x.depth, p, [&](int j, std::size_t m) { return hom_norm(x.at(j, m)); });
}

// Node-centred midpoint rule on the dual cells, diagonal cells excluded.
template <class Dist>
double integral_pth_power(std::size_t n, double step, double alpha, double p, Dist dist) {
  const double expo = alpha * p + 1.0;
  CompensatedSum acc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dt = static_cast<double>(b - a) * step;
      acc.add(2.0 * std::pow(dist(a, b), p) / std::pow(dt, expo));
    }
  return acc.value() * step * step;
}

void require_same_shape(const GroupPath& a, const GroupPath& b) {
  if (a.dim() != b.dim() || a.level() != b.level() || a.depth() != b.depth())
    throw StructuralError("inhom_dist: paths differ in dim/level/depth");
}

// |pi_k(g)| for group elements, or of the difference of two.
double level_abs(const GroupElement& g, int k) { return level_norm(g.tensor(), k); }
double level_abs_diff(const GroupElement& g, const GroupElement& h, int k) {
  auto a = g.level_span(k);
  auto b = h.level_span(k);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NormReport sobolev_norm_dyadic(const SampledPath& x, const SobolevParams& prm) {
  prm.validate(false);
  require_finite_p(prm, "sobolev_norm_dyadic");
  return sobolev_from_sums(path_sums(x, prm.p), prm, x.depth());
}

NormReport sobolev_norm_dyadic(const IncrementPyramid& x, const SobolevParams& prm) {
  prm.validate(false);
  require_finite_p(prm, "sobolev_norm_dyadic");
  return sobolev_from_sums(pyramid_sums(x, prm.p), prm, x.depth);
}

NormReport sobolev_norm_dyadic(const GroupPath& x, const SobolevParams& prm) {
  return sobolev_norm_dyadic(increments_of(x), prm);
}

NormReport besov_norm_dyadic(const SampledPath& x, const SobolevParams& prm) {
  prm.validate(true);
  if (prm.q == prm.p) {
    NormReport r = sobolev_norm_dyadic(x, prm);
    r.norm_name = "besov_dyadic";
    return r;
  }
  require_finite_p(prm, "besov_norm_dyadic");
  return besov_from_sums(path_sums(x, prm.p), prm, x.depth());
}

NormReport besov_norm_dyadic(const GroupPath& x, const SobolevParams& prm) {
  prm.validate(true);
  if (prm.q == prm.p) {
    NormReport r = sobolev_norm_dyadic(x, prm);
    r.norm_name = "besov_dyadic";
    return r;
  }
  require_finite_p(prm, "besov_norm_dyadic");
  return besov_from_sums(pyramid_sums(increments_of(x), prm.p), prm, x.depth());
}

double sobolev_norm_integral(std::span<const double> values, int dim, double step,
                             const SobolevParams& prm) {
  prm.validate(false);
  require_finite_p(prm, "sobolev_norm_integral");
  const auto d = static_cast<std::size_t>(dim);
  const std::size_t n = values.size() / d;
  const double s = integral_pth_power(n, step, prm.alpha, prm.p, [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double dv = values[b * d + i] - values[a * d + i];
      acc += dv * dv;
    }
    return std::sqrt(acc);
  });
  return std::pow(s, 1.0 / prm.p);
}

NormReport sobolev_norm_integral(const SampledPath& x, const SobolevParams& prm) {
  if (x.depth() < 2) throw StructuralError("integral norm needs depth >= 2");
  NormReport r{"sobolev_integral", prm.alpha, prm.p, prm.p, x.depth(), 0.0, {}};
  r.value = sobolev_norm_integral(x.values(), x.dim(), std::ldexp(1.0, -x.depth()), prm);
  return r;
}

NormReport sobolev_norm_integral(const GroupPath& x, const SobolevParams& prm) {
  prm.validate(false);
  require_finite_p(prm, "sobolev_norm_integral");
  if (x.depth() < 2) throw StructuralError("integral norm needs depth >= 2");
  std::vector<GroupElement> inv(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) inv[k] = group_inverse(x[k]);
  const double s = integral_pth_power(x.size(), std::ldexp(1.0, -x.depth()), prm.alpha, prm.p,
                                      [&](std::size_t a, std::size_t b) { return hom_norm(inv[a] * x[b]); });
  return NormReport{"sobolev_integral", prm.alpha, prm.p, prm.p, x.depth(), std::pow(s, 1.0 / prm.p), {}};
}

DyadicLevel2 dyadic_level2(const GroupPath& x) {
  if (x.level() != 2) throw StructuralError("dyadic_level2 needs a level-2 path");
  DyadicLevel2 out;
  out.dim = x.dim();
  out.depth = x.depth();
  const auto d = static_cast<std::size_t>(x.dim());
  out.l1.resize(out.count() * d);
  out.l2.resize(out.count() * d * d);
  std::size_t idx = 0;
  for (int j = 0; j <= x.depth(); ++j) {
    const std::size_t step = std::size_t{1} << (x.depth() - j);
    for (std::size_t m = 0; m < (std::size_t{1} << j); ++m, ++idx) {
      const GroupElement& gs = x[m * step];
      const GroupElement& gt = x[(m + 1) * step];
      auto xs = gs.level_span(1);
      auto xt = gt.level_span(1);
      auto Xs = gs.level_span(2);
      auto Xt = gt.level_span(2);
      double* o1 = out.l1.data() + idx * d;
      double* o2 = out.l2.data() + idx * d * d;
      for (std::size_t a = 0; a < d; ++a) o1[a] = xt[a] - xs[a];
      // (X_s^{-1} X_t)_2 = X_t - X_s - x_s (x) (x_t - x_s)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          o2[a * d + b] = Xt[a * d + b] - Xs[a * d + b] - xs[a] * o1[b];
    }
  }
  return out;
}

namespace {

// Per-level sums sum_j w_j sum_m |pi_k(.)|^{p/k} over dyadic intervals,
// for a level-2 pair (x2 may be null).
std::vector<double> inhom_sums_level2(const GroupPath& x1, const GroupPath* x2,
                                      const SobolevParams& prm) {
  const DyadicLevel2 a = dyadic_level2(x1);
  DyadicLevel2 b;
  if (x2) b = dyadic_level2(*x2);
  const auto d = static_cast<std::size_t>(x1.dim());
  std::vector<double> out(2);
  for (int k = 1; k <= 2; ++k) {
    const std::size_t width = k == 1 ? d : d * d;
    const std::vector<double>& va = k == 1 ? a.l1 : a.l2;
    const std::vector<double>* vb = x2 ? (k == 1 ? &b.l1 : &b.l2) : nullptr;
    const double e = prm.p / k;
    CompensatedSum total;
    std::size_t idx = 0;
    for (int j = 0; j <= x1.depth(); ++j) {
      CompensatedSum acc;
      for (std::size_t m = 0; m < (std::size_t{1} << j); ++m, ++idx) {
        double s = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
          const double v = va[idx * width + i] - (vb ? (*vb)[idx * width + i] : 0.0);
          s += v * v;
        }
        acc.add(std::pow(s, 0.5 * e));
      }
      total.add(std::exp2(j * (prm.alpha * prm.p - 1.0)) * acc.value());
    }
    out[static_cast<std::size_t>(k - 1)] = total.value();
  }
  return out;
}

std::vector<double> inhom_sums_generic(const GroupPath& x1, const GroupPath* x2,
                                       const SobolevParams& prm) {
  const IncrementPyramid a = increments_of(x1);
  IncrementPyramid b;
  if (x2) b = increments_of(*x2);
  std::vector<double> out(static_cast<std::size_t>(x1.level()));
  for (int k = 1; k <= x1.level(); ++k) {
    const double e = prm.p / k;
    CompensatedSum total;
    for (int j = 0; j <= x1.depth(); ++j) {
      CompensatedSum acc;
      for (std::size_t m = 0; m < (std::size_t{1} << j); ++m) {
        const double v = x2 ? level_abs_diff(a.at(j, m), b.at(j, m), k) : level_abs(a.at(j, m), k);
        acc.add(std::pow(v, e));
      }
      total.add(std::exp2(j * (prm.alpha * prm.p - 1.0)) * acc.value());
    }
    out[static_cast<std::size_t>(k - 1)] = total.value();
  }
  return out;
}

std::vector<double> inhom_sums_integral(const GroupPath& x1, const GroupPath* x2,
                                        const SobolevParams& prm) {
  const std::size_t n = x1.size();
  const double h = std::ldexp(1.0, -x1.depth());
  const double expo = prm.alpha * prm.p + 1.0;
  std::vector<GroupElement> inv1(n), inv2;
  for (std::size_t k = 0; k < n; ++k) inv1[k] = group_inverse(x1[k]);
  if (x2) {
    inv2.resize(n);
    for (std::size_t k = 0; k < n; ++k) inv2[k] = group_inverse((*x2)[k]);
  }
  const auto N = static_cast<std::size_t>(x1.level());
  std::vector<CompensatedSum> acc(N);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const double w = 1.0 / std::pow(static_cast<double>(a > b ? a - b : b - a) * h, expo);
      const GroupElement g1 = inv1[a] * x1[b];
      GroupElement g2;
      if (x2) g2 = inv2[a] * (*x2)[b];
      for (std::size_t k = 1; k <= N; ++k) {
        const int ki = static_cast<int>(k);
        const double v = x2 ? level_abs_diff(g1, g2, ki) : level_abs(g1, ki);
        acc[k - 1].add(w * std::pow(v, prm.p / static_cast<double>(k)));
      }
    }
  std::vector<double> out(N);
  for (std::size_t k = 0; k < N; ++k) out[k] = acc[k].value() * h * h;
  return out;
}

InhomReport finish_inhom(const std::vector<double>& sums, const SobolevParams& prm) {
  InhomReport r;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    r.per_level.push_back(std::pow(sums[k], static_cast<double>(k + 1) / prm.p));
    r.value += r.per_level.back();
  }
  return r;
}

}  // namespace

InhomReport inhom_norm(const GroupPath& x, const SobolevParams& prm, bool discrete) {
  prm.validate(true);
  require_finite_p(prm, "inhom_norm");
  if (x.level() != prm.rough_level())
    throw StructuralError("inhom_norm: path level " + std::to_string(x.level()) +
                          " differs from [1/alpha] = " + std::to_string(prm.rough_level()));
  if (!discrete) return finish_inhom(inhom_sums_integral(x, nullptr, prm), prm);
  if (x.level() == 2) return finish_inhom(inhom_sums_level2(x, nullptr, prm), prm);
  return finish_inhom(inhom_sums_generic(x, nullptr, prm), prm);
}

InhomReport inhom_dist(const GroupPath& x1, const GroupPath& x2, const SobolevParams& prm,
                       bool discrete) {
  prm.validate(true);
  require_finite_p(prm, "inhom_dist");
  require_same_shape(x1, x2);
  if (!discrete) return finish_inhom(inhom_sums_integral(x1, &x2, prm), prm);
  if (x1.level() == 2) return finish_inhom(inhom_sums_level2(x1, &x2, prm), prm);
  return finish_inhom(inhom_sums_generic(x1, &x2, prm), prm);
}

double holder_defect(const SampledPath& x, const SobolevParams& prm) {
  prm.validate(true);
  const double e = prm.alpha - (std::isinf(prm.p) ? 0.0 : 1.0 / prm.p);
  const double h = std::ldexp(1.0, -x.depth());
  double best = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      best = std::max(best, euclid(x, a, b) / std::pow(static_cast<double>(b - a) * h, e));
  return best;
}

double holder_defect(const GroupPath& x, const SobolevParams& prm) {
  prm.validate(true);
  const double e = prm.alpha - (std::isinf(prm.p) ? 0.0 : 1.0 / prm.p);
  const double h = std::ldexp(1.0, -x.depth());
  std::vector<GroupElement> inv(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) inv[k] = group_inverse(x[k]);
  double best = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      best = std::max(best, hom_norm(inv[a] * x[b]) / std::pow(static_cast<double>(b - a) * h, e));
  return best;
}

double dyadic_increment_distance(const IncrementPyramid& a, const IncrementPyramid& b,
                                 const SobolevParams& prm) {
  prm.validate(false);
  require_finite_p(prm, "dyadic_increment_distance");
  if (a.depth != b.depth || a.dim != b.dim || a.level != b.level)
    throw StructuralError("increment pyramids differ in shape");
  const auto sums = scale_sums(a.depth, prm.p, [&](int j, std::size_t m) {
    return cc_dist(a.at(j, m), b.at(j, m));
  });
  return sobolev_from_sums(sums, prm, a.depth).value;
}

}  // namespace roughlift
