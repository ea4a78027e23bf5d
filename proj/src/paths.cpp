// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlift/errors.hpp"

namespace roughlift {

SampledPath::SampledPath(int dim, int depth, std::vector<double> values)
    : dim_(dim), depth_(depth), values_(std::move(values)) {
  if (dim < 1) throw StructuralError("path dimension must be positive");
  if (depth < 0 || depth > 30) throw StructuralError("path depth out of range");
  if (values_.size() != size() * static_cast<std::size_t>(dim))
    throw StructuralError("path needs 2^J+1 points: expected " +
                          std::to_string(size() * static_cast<std::size_t>(dim)) +
                          " values, got " + std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw StructuralError("path contains a non-finite value");
}

SampledPath SampledPath::constant(int dim, int depth, std::span<const double> point) {
  std::vector<double> v;
  const std::size_t n = (std::size_t{1} << depth) + 1;
  v.reserve(n * static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < n; ++k) v.insert(v.end(), point.begin(), point.end());
  return SampledPath(dim, depth, std::move(v));
}

std::vector<double> SampledPath::increment(std::size_t k0, std::size_t k1) const {
  std::vector<double> d(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) d[static_cast<std::size_t>(i)] = at(k1, i) - at(k0, i);
  return d;
}

SampledPath SampledPath::component(int i) const {
  if (i < 0 || i >= dim_) throw StructuralError("component index out of range");
  std::vector<double> v(size());
  for (std::size_t k = 0; k < size(); ++k) v[k] = at(k, i);
  return SampledPath(1, depth_, std::move(v));
}

GroupPath::GroupPath(int dim, int level, int depth, std::vector<GroupElement> elements)
    : dim_(dim), level_(level), depth_(depth), elements_(std::move(elements)) {
  if (elements_.size() != (std::size_t{1} << depth) + 1)
    throw StructuralError("group path needs 2^J+1 elements");
  for (const auto& g : elements_)
    if (g.dim() != dim || g.level() != level)
      throw StructuralError("group path element has the wrong shape");
}

GroupElement GroupPath::increment(std::size_t s, std::size_t t) const {
  return group_inverse(elements_[s]) * elements_[t];
}

GroupElement GroupPath::dyadic_increment(int j, std::size_t m) const {
  const std::size_t step = std::size_t{1} << (depth_ - j);
  return increment(m * step, (m + 1) * step);
}

SampledPath GroupPath::level1() const {
  std::vector<double> v;
  v.reserve(size() * static_cast<std::size_t>(dim_));
  for (const auto& g : elements_) {
    auto l1 = g.level_span(1);
    v.insert(v.end(), l1.begin(), l1.end());
  }
  return SampledPath(dim_, depth_, std::move(v));
}

IncrementPyramid increments_of(const GroupPath& x) {
  IncrementPyramid p{x.dim(), x.level(), x.depth(), {}};
  std::vector<GroupElement> inv(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) inv[k] = group_inverse(x[k]);
  p.by_depth.resize(static_cast<std::size_t>(x.depth()) + 1);
  for (int j = 0; j <= x.depth(); ++j) {
    const std::size_t step = std::size_t{1} << (x.depth() - j);
    auto& row = p.by_depth[static_cast<std::size_t>(j)];
    row.reserve(std::size_t{1} << j);
    for (std::size_t m = 0; m < (std::size_t{1} << j); ++m) row.push_back(inv[m * step] * x[(m + 1) * step]);
  }
  return p;
}

std::size_t grid_index(double t, int depth) {
  const double n = std::ldexp(1.0, depth);
  const double k = t * n;
  if (t < 0.0 || t > 1.0 || k != std::floor(k))
    throw StructuralError("time " + std::to_string(t) + " is not on the depth-" +
                          std::to_string(depth) + " grid");
  return static_cast<std::size_t>(k);
}

double chen_residual(const GroupPath& x) {
  const std::size_t n = x.size();
  std::vector<GroupElement> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = group_inverse(x[k]);
  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s; t < n; ++t) {
      const GroupElement st = inv[s] * x[t];
      for (std::size_t u = s; u <= t; ++u) {
        const GroupElement prod = (inv[s] * x[u]) * (inv[u] * x[t]);
        worst = std::max(worst, max_abs_diff(prod.tensor(), st.tensor()));
      }
    }
  }
  return worst;
}

double geometricity_residual(const GroupPath& x) {
  if (x.level() < 2) return 0.0;
  const int d = x.dim();
  const auto du = static_cast<std::size_t>(d);
  double worst = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    for (std::size_t t = s; t < x.size(); ++t) {
      const GroupElement g = x.increment(s, t);
      auto l1 = g.level_span(1);
      auto l2 = g.level_span(2);
      for (std::size_t a = 0; a < du; ++a)
        for (std::size_t b = 0; b < du; ++b) {
          const double sym = 0.5 * (l2[a * du + b] + l2[b * du + a]);
          worst = std::max(worst, std::abs(sym - 0.5 * l1[a] * l1[b]));
        }
    }
  }
  return worst;
}

double projection_residual(const GroupPath& x, const GroupPath& base) {
  if (x.size() != base.size() || x.dim() != base.dim() || base.level() > x.level())
    throw StructuralError("projection_residual: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, max_abs_diff(project(x[k], base.level()).tensor(), base[k].tensor()));
  return worst;
}

double projection_residual(const GroupPath& x, const SampledPath& base) {
  if (x.size() != base.size() || x.dim() != base.dim())
    throw StructuralError("projection_residual: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto l1 = x[k].level_span(1);
    for (int i = 0; i < x.dim(); ++i)
      worst = std::max(worst, std::abs(l1[static_cast<std::size_t>(i)] - (base.at(k, i) - base.at(0, i))));
  }
  return worst;
}

}  // namespace roughlift
