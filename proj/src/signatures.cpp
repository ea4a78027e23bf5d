// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/signatures.hpp"

#include <cmath>
#include <string>

#include "roughlift/errors.hpp"

namespace roughlift {

namespace {

void check_level(int level) {
  if (level < 1 || level > kMaxSignatureLevel)
    throw ParameterError("signature level must lie in 1.." + std::to_string(kMaxSignatureLevel) +
                         ", got " + std::to_string(level));
}

void check_depth(const SampledPath& path, int m) {
  if (m < 0 || m > path.depth())
    throw StructuralError("interpolation depth " + std::to_string(m) + " exceeds path depth " +
                          std::to_string(path.depth()));
}

}  // namespace

GroupElement segment_signature(std::span<const double> dx, int level) {
  check_level(level);
  return GroupElement(tensor_exp(TruncatedTensor::from_vector(level, dx)));
}

GroupElement pw_linear_signature(const SampledPath& path, double s, double t, int level) {
  check_level(level);
  const std::size_t ks = grid_index(s, path.depth());
  const std::size_t kt = grid_index(t, path.depth());
  if (ks > kt) throw StructuralError("pw_linear_signature needs s <= t");
  GroupElement g = GroupElement::unit(path.dim(), level);
  for (std::size_t k = ks; k < kt; ++k) g = g * segment_signature(path.increment(k, k + 1), level);
  return g;
}

SampledPath dyadic_interpolate(const SampledPath& path, int m) {
  check_depth(path, m);
  const int d = path.dim();
  const std::size_t n = path.size();
  const std::size_t step = std::size_t{1} << (path.depth() - m);
  std::vector<double> v(n * static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t left = (k / step) * step;
    const std::size_t right = std::min(left + step, n - 1);
    const double w = right == left ? 0.0 : static_cast<double>(k - left) / static_cast<double>(step);
    for (int i = 0; i < d; ++i) {
      const double a = path.at(left, i);
      const double b = path.at(right, i);
      v[k * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = k == left ? a : a + w * (b - a);
    }
  }
  return SampledPath(d, path.depth(), std::move(v));
}

GroupPath canonical_lift(const SampledPath& path, int m, int level) {
  check_level(level);
  const SampledPath xm = dyadic_interpolate(path, m);
  std::vector<GroupElement> els;
  els.reserve(xm.size());
  GroupElement g = GroupElement::unit(path.dim(), level);
  els.push_back(g);
  for (std::size_t k = 0; k + 1 < xm.size(); ++k) {
    g = g * segment_signature(xm.increment(k, k + 1), level);
    els.push_back(g);
  }
  return GroupPath(path.dim(), level, path.depth(), std::move(els));
}

GroupPath canonical_lift(const SampledPath& path) { return canonical_lift(path, path.depth(), 2); }

std::vector<double> second_level_coarse(const SampledPath& path, int m, int n, std::size_t k) {
  check_depth(path, m);
  check_depth(path, n);
  if (k < 1 || k > (std::size_t{1} << n))
    throw StructuralError("interval index " + std::to_string(k) + " outside 1..2^" + std::to_string(n));
  const auto d = static_cast<std::size_t>(path.dim());
  const int J = path.depth();
  std::vector<double> out(d * d, 0.0);
  auto coarse_increment = [&](int depth, std::size_t idx) {  // idx 1-based
    const std::size_t step = std::size_t{1} << (J - depth);
    return path.increment((idx - 1) * step, idx * step);
  };
  if (n >= m) {
    const std::size_t l = (k - 1) / (std::size_t{1} << (n - m)) + 1;
    const std::vector<double> dl = coarse_increment(m, l);
    const double c = 0.5 * std::ldexp(1.0, 2 * (m - n));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) out[a * d + b] = c * dl[a] * dl[b];
    return out;
  }
  const std::vector<double> dk = coarse_increment(n, k);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) out[a * d + b] = 0.5 * dk[a] * dk[b];
  const std::size_t ratio = std::size_t{1} << (m - n);
  const std::size_t first = ratio * (k - 1) + 1;
  std::vector<double> running(d, 0.0);  // sum of fine increments r < l
  for (std::size_t l = first; l < first + ratio; ++l) {
    const std::vector<double> dl = coarse_increment(m, l);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        out[a * d + b] += 0.5 * (running[a] * dl[b] - dl[a] * running[b]);
    for (std::size_t a = 0; a < d; ++a) running[a] += dl[a];
  }
  return out;
}

IncrementPyramid approx_geodesic_interpolation(const GroupPath& x, int n) {
  if (n < 0 || n > x.depth())
    throw StructuralError("interpolation depth " + std::to_string(n) + " exceeds path depth");
  IncrementPyramid p = increments_of(x);
  for (int j = n + 1; j <= x.depth(); ++j) {
    const double lambda = std::ldexp(1.0, n - j);
    auto& row = p.by_depth[static_cast<std::size_t>(j)];
    for (std::size_t m = 0; m < row.size(); ++m)
      row[m] = dilation(p.at(n, m >> (j - n)), lambda);
  }
  return p;
}

}  // namespace roughlift
