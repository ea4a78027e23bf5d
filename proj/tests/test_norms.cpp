// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "roughlift/errors.hpp"
#include "roughlift/norms.hpp"
#include "roughlift/signatures.hpp"
#include "test_support.hpp"

using namespace roughlift;
using namespace testing_support;

namespace {

const SobolevParams kDefault{0.4, 4.0, 4.0};

SampledPath sine(int depth) {
  const std::size_t n = (std::size_t{1} << depth) + 1;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k)
    v[k] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1));
  return SampledPath(1, depth, std::move(v));
}

// Adds t * A (A antisymmetric, d = 2) to the level-2 part of every element.
GroupPath add_area(const GroupPath& x, double a) {
  std::vector<GroupElement> els;
  for (std::size_t k = 0; k < x.size(); ++k) {
    TruncatedTensor t = x[k].tensor();
    const double s = static_cast<double>(k) / static_cast<double>(x.size() - 1);
    t.set({1, 2}, t.coeff({1, 2}) + s * a);
    t.set({2, 1}, t.coeff({2, 1}) - s * a);
    els.emplace_back(std::move(t));
  }
  return GroupPath(x.dim(), x.level(), x.depth(), std::move(els));
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(kDefault.validate(true));
  CHECK_THROWS_AS((SobolevParams{0.0, 4.0, 4.0}.validate(false)), ParameterError);
  CHECK_THROWS_AS((SobolevParams{1.0, 4.0, 4.0}.validate(false)), ParameterError);
  CHECK_THROWS_AS((SobolevParams{0.4, 1.0, 4.0}.validate(false)), ParameterError);
  CHECK_THROWS_AS((SobolevParams{0.4, 4.0, 0.5}.validate(false)), ParameterError);
  CHECK_THROWS_AS((SobolevParams{0.2, 4.0, 4.0}.validate(true)), ParameterError);
  CHECK_NOTHROW((SobolevParams{0.2, 4.0, 4.0}.validate(false)));
  CHECK(kDefault.rough_level() == 2);
  CHECK(SobolevParams{0.3, 8.0, 8.0}.rough_level() == 3);
}

TEST_CASE("all norms vanish on constant paths") {
  const std::vector<double> c{2.0, -1.0};
  const SampledPath x = SampledPath::constant(2, 5, c);
  const GroupPath g = canonical_lift(x);
  CHECK(sobolev_norm_dyadic(x, kDefault).value == 0.0);
  CHECK(sobolev_norm_dyadic(g, kDefault).value == 0.0);
  CHECK(sobolev_norm_integral(x, kDefault).value == 0.0);
  CHECK(sobolev_norm_integral(g, kDefault).value == 0.0);
  CHECK(besov_norm_dyadic(x, SobolevParams{0.4, 4.0, 2.0}).value == 0.0);
  CHECK(besov_norm_dyadic(g, SobolevParams{0.4, 4.0, kInf}).value == 0.0);
  CHECK(inhom_norm(g, kDefault).value == 0.0);
  CHECK(inhom_norm(g, kDefault, false).value == 0.0);
  CHECK(holder_defect(x, kDefault) == 0.0);
  CHECK(holder_defect(g, kDefault) == 0.0);
}

TEST_CASE("dyadic norm of a linear path") {
  const double v = 1.7, a = 0.4, p = 4.0;
  const double closed = v * std::pow(1.0 - std::pow(2.0, p * (a - 1.0)), -1.0 / p);
  const NormReport r = sobolev_norm_dyadic(linear(1, 12, {v}), kDefault);
  CHECK(std::abs(r.value - closed) < 1e-6);
  CHECK(r.per_scale.size() == 13);
  CHECK(r.norm_name == "sobolev_dyadic");
  // The same path in two dimensions with slope (3, 4)/5 * v.
  CHECK(sobolev_norm_dyadic(linear(2, 12, {0.6 * v, 0.8 * v}), kDefault).value ==
        doctest::Approx(r.value).epsilon(1e-14));
  // Group-valued version uses the same numbers at level 1.
  CHECK(sobolev_norm_dyadic(canonical_lift(linear(1, 12, {v})), kDefault).value ==
        doctest::Approx(r.value).epsilon(1e-12));
}

TEST_CASE("homogeneity of level-1 norms") {
  std::mt19937_64 rng(11);
  const SampledPath b = brownian(rng, 2, 7);
  std::vector<double> scaled(b.values());
  for (double& x : scaled) x *= -2.5;
  const SampledPath s(2, 7, scaled);
  CHECK(sobolev_norm_dyadic(s, kDefault).value == doctest::Approx(2.5 * sobolev_norm_dyadic(b, kDefault).value).epsilon(1e-13));
  CHECK(sobolev_norm_integral(s, kDefault).value ==
        doctest::Approx(2.5 * sobolev_norm_integral(b, kDefault).value).epsilon(1e-13));
  CHECK(holder_defect(s, kDefault) == doctest::Approx(2.5 * holder_defect(b, kDefault)).epsilon(1e-13));
  // Rough-path dilation scales the homogeneous norm the same way.
  std::vector<GroupElement> dil;
  const GroupPath g = canonical_lift(b);
  for (const GroupElement& e : g.elements()) dil.push_back(dilation(e, 3.0));
  const GroupPath gd(2, 2, 7, dil);
  CHECK(sobolev_norm_dyadic(gd, kDefault).value == doctest::Approx(3.0 * sobolev_norm_dyadic(g, kDefault).value).epsilon(1e-12));
}

TEST_CASE("integral norm") {
  const double j8 = sobolev_norm_integral(sine(8), kDefault).value;
  const double j9 = sobolev_norm_integral(sine(9), kDefault).value;
  CHECK(std::abs(j8 - j9) < 0.05 * j9);

  const SampledPath lin = linear(1, 8, {1.0});
  const double integral = sobolev_norm_integral(lin, kDefault).value;
  const double dyadic = sobolev_norm_dyadic(lin, kDefault).value;
  CHECK(std::isfinite(integral));
  CHECK(integral / dyadic > 0.1);
  CHECK(integral / dyadic < 10.0);

  CHECK_THROWS_AS(sobolev_norm_integral(lin, SobolevParams{0.4, kInf, kInf}), StructuralError);
  CHECK_THROWS_AS(sobolev_norm_integral(linear(1, 1, {1.0}), kDefault), StructuralError);

  // Raw overload agrees with the path overload on [0,1].
  std::mt19937_64 rng(12);
  const SampledPath b = brownian(rng, 2, 6);
  CHECK(sobolev_norm_integral(b.values(), 2, 1.0 / 64.0, kDefault) ==
        doctest::Approx(sobolev_norm_integral(b, kDefault).value).epsilon(1e-14));
}

TEST_CASE("norm equivalence band over a fuzz corpus") {
  std::mt19937_64 rng(13);
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < 100; ++i) {
    SampledPath x;
    switch (i % 3) {
      case 0: x = smooth(rng, 2, 7); break;
      case 1: x = piecewise_linear(rng, 2, 7, 3); break;
      default: x = brownian(rng, 2, 7); break;
    }
    const double r = sobolev_norm_integral(x, kDefault).value / sobolev_norm_dyadic(x, kDefault).value;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  MESSAGE("integral/dyadic ratio in [" << lo << ", " << hi << "]");
  const double c = std::max(hi, 1.0 / lo);
  CHECK(c < 10.0);
}

TEST_CASE("Besov norm") {
  std::mt19937_64 rng(14);
  const SampledPath b = brownian(rng, 2, 9);
  const GroupPath g = canonical_lift(b);
  CHECK(besov_norm_dyadic(b, kDefault).value == sobolev_norm_dyadic(b, kDefault).value);
  CHECK(besov_norm_dyadic(g, kDefault).value == sobolev_norm_dyadic(g, kDefault).value);
  const double q2 = besov_norm_dyadic(b, SobolevParams{0.4, 4.0, 2.0}).value;
  const double qi = besov_norm_dyadic(b, SobolevParams{0.4, 4.0, kInf}).value;
  const double q8 = besov_norm_dyadic(b, SobolevParams{0.4, 4.0, 8.0}).value;
  CHECK(qi <= q8);
  CHECK(q8 <= q2);
  // q = inf is the largest weighted scale term.
  const NormReport r = besov_norm_dyadic(b, SobolevParams{0.4, 4.0, kInf});
  double best = 0.0;
  for (int j = 0; j <= 9; ++j) {
    double s = 0.0;
    for (std::size_t m = 0; m < (std::size_t{1} << j); ++m) {
      const auto dx = b.increment(m << (9 - j), (m + 1) << (9 - j));
      s += std::pow(std::hypot(dx[0], dx[1]), 4.0);
    }
    best = std::max(best, std::exp2(j * (0.4 - 0.25)) * std::pow(s, 0.25));
  }
  CHECK(r.value == doctest::Approx(best).epsilon(1e-13));
}

TEST_CASE("inhomogeneous norm") {
  // Linear path: level-2 increments are 1/2 dx (x) dx.
  const double v = 0.8;
  const GroupPath g = canonical_lift(linear(2, 8, {v, 0.0}));
  const InhomReport r = inhom_norm(g, kDefault);
  REQUIRE(r.per_level.size() == 2);
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const double len = std::ldexp(1.0, -j);
    const double w = std::exp2(j * (0.4 * 4.0 - 1.0)) * std::ldexp(1.0, j);
    s1 += w * std::pow(v * len, 4.0);
    s2 += w * std::pow(0.5 * v * v * len * len, 2.0);
  }
  CHECK(r.per_level[0] == doctest::Approx(std::pow(s1, 0.25)).epsilon(1e-13));
  CHECK(r.per_level[1] == doctest::Approx(std::pow(s2, 0.5)).epsilon(1e-13));
  CHECK(r.value == r.per_level[0] + r.per_level[1]);

  const InhomReport ri = inhom_norm(g, kDefault, false);
  CHECK(ri.value == ri.per_level[0] + ri.per_level[1]);
  CHECK(ri.value > 0.0);

  // The generic level-N code path agrees with the level-2 fast path.
  std::mt19937_64 rng(15);
  const SampledPath b = brownian(rng, 2, 6);
  const GroupPath x2 = canonical_lift(b);
  const GroupPath x3 = canonical_lift(b, 6, 3);
  const SobolevParams p3{0.3, 8.0, 8.0};
  CHECK(inhom_norm(x3, p3).value > 0.0);
  CHECK_THROWS_AS(inhom_norm(x3, kDefault), StructuralError);
  CHECK_THROWS_AS(inhom_norm(x2, p3), StructuralError);
}

TEST_CASE("inhomogeneous distance") {
  std::mt19937_64 rng(16);
  const GroupPath x = canonical_lift(brownian(rng, 2, 6));
  CHECK(inhom_dist(x, x, kDefault).value == 0.0);
  CHECK(inhom_dist(x, x, kDefault, false).value == 0.0);

  const double a = 0.3;
  const GroupPath y = add_area(x, a);
  const InhomReport r = inhom_dist(x, y, kDefault);
  CHECK(r.per_level[0] == 0.0);
  // Pure area term: |pi_2| = sqrt(2) a |t-s| on each interval.
  double s2 = 0.0;
  for (int j = 0; j <= 6; ++j)
    s2 += std::exp2(j * (0.4 * 4.0 - 1.0)) * std::ldexp(1.0, j) *
          std::pow(std::sqrt(2.0) * a * std::ldexp(1.0, -j), 2.0);
  CHECK(r.value == doctest::Approx(std::sqrt(s2)).epsilon(1e-10));
  CHECK(inhom_dist(y, x, kDefault).value == r.value);
  CHECK(inhom_dist(x, y, kDefault, false).per_level[0] < 1e-12);

  CHECK_THROWS_AS(inhom_dist(x, canonical_lift(brownian(rng, 2, 5)), kDefault), StructuralError);

  // Triangle inequality on a corpus.
  for (int i = 0; i < 30; ++i) {
    const GroupPath p1 = canonical_lift(brownian(rng, 2, 5));
    const GroupPath p2 = canonical_lift(smooth(rng, 2, 5));
    const GroupPath p3 = add_area(canonical_lift(piecewise_linear(rng, 2, 5, 2)), 0.7);
    for (bool discrete : {true, false}) {
      const double d12 = inhom_dist(p1, p2, kDefault, discrete).value;
      const double d23 = inhom_dist(p2, p3, kDefault, discrete).value;
      const double d13 = inhom_dist(p1, p3, kDefault, discrete).value;
      CHECK(d13 <= d12 + d23 + 1e-10);
      CHECK(inhom_dist(p1, p2, kDefault, discrete).value == doctest::Approx(inhom_dist(p2, p1, kDefault, discrete).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("Holder defect") {
  const double v = 2.2;
  CHECK(holder_defect(linear(1, 6, {v}), kDefault) == doctest::Approx(v).epsilon(1e-14));
  CHECK(holder_defect(canonical_lift(linear(2, 5, {v, 0.0})), kDefault) == doctest::Approx(v).epsilon(1e-13));
  std::mt19937_64 rng(17);
  const SampledPath b = brownian(rng, 1, 8);
  CHECK(holder_defect(b, kDefault) > 0.0);
  CHECK(std::isfinite(holder_defect(b, SobolevParams{0.4, kInf, kInf})));
}

TEST_CASE("positivity and determinism") {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 20; ++i) {
    const SampledPath b = brownian(rng, 3, 6);
    const GroupPath g = canonical_lift(b);
    CHECK(sobolev_norm_dyadic(b, kDefault).value > 0.0);
    CHECK(sobolev_norm_dyadic(g, kDefault).value > 0.0);
    CHECK(inhom_norm(g, kDefault).value > 0.0);
    CHECK(sobolev_norm_dyadic(g, kDefault).value == sobolev_norm_dyadic(g, kDefault).value);
  }
}
