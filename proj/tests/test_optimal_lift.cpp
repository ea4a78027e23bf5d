// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "roughlift/errors.hpp"
#include "roughlift/lyons_victoir.hpp"
#include "roughlift/norms.hpp"
#include "roughlift/optimal_lift.hpp"
#include "roughlift/signatures.hpp"
#include "test_support.hpp"

using namespace roughlift;
using namespace testing_support;

namespace {

const SobolevParams kDefault{0.4, 4.0, 4.0};

LiftPerturbation random_psi(std::mt19937_64& rng, int d, int depth, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  LiftPerturbation psi(d, depth);
  for (std::size_t k = 1; k < psi.size(); ++k)
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) psi.set(k, a, b, nd(rng));
  return psi;
}

double max_level2_diff(const GroupPath& x, const GroupPath& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, max_abs_diff(x[k].tensor(), y[k].tensor()));
  return m;
}

}  // namespace

TEST_CASE("perturbation validation") {
  CHECK_THROWS_AS(LiftPerturbation(2, 1, {0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0}), StructuralError);
  CHECK_THROWS_AS(LiftPerturbation(2, 1, {0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0}), StructuralError);
  CHECK_THROWS_AS(LiftPerturbation(2, 1, {0, 0, 0}), StructuralError);
  LiftPerturbation p(2, 1);
  CHECK_THROWS_AS(p.set(0, 0, 1, 1.0), StructuralError);
  CHECK_THROWS_AS(p.set(1, 1, 1, 1.0), StructuralError);
  p.set(2, 0, 1, 0.5);
  CHECK(p.at(2, 1, 0) == -0.5);
}

TEST_CASE("admissible lift is an affine action") {
  std::mt19937_64 rng(40);
  const GroupPath x0 = canonical_lift(brownian(rng, 3, 5));
  CHECK(max_level2_diff(admissible_lift(x0, LiftPerturbation(3, 5)), x0) == 0.0);
  for (int i = 0; i < 5; ++i) {
    const LiftPerturbation p1 = random_psi(rng, 3, 5, 0.3), p2 = random_psi(rng, 3, 5, 0.3);
    const GroupPath l1 = admissible_lift(x0, p1);
    CHECK(max_level2_diff(admissible_lift(l1, p2), admissible_lift(x0, p1 + p2)) < 1e-14);
    CHECK(chen_residual(l1) < 1e-11);
    CHECK(geometricity_residual(l1) < 1e-11);
    CHECK(projection_residual(l1, x0.level1()) == 0.0);
    // Increments of lift(x0, lambda psi) are x0 increments plus lambda psi_t - lambda psi_s.
    const double lambda = 0.3;
    const GroupPath ll = admissible_lift(x0, lambda * p1);
    for (std::size_t s = 0; s < ll.size(); s += 5)
      for (std::size_t t = s; t < ll.size(); t += 3) {
        const GroupElement a = ll.increment(s, t), b = x0.increment(s, t);
        for (int u = 1; u <= 3; ++u)
          for (int v = 1; v <= 3; ++v)
            CHECK(a.coeff({u, v}) - b.coeff({u, v}) ==
                  doctest::Approx(lambda * (p1.at(t, u - 1, v - 1) - p1.at(s, u - 1, v - 1))).epsilon(1e-10));
      }
  }
}

TEST_CASE("objective is the level-2 term of the discrete inhomogeneous norm") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 5; ++i) {
    const GroupPath x0 = canonical_lift(brownian(rng, 2, 6));
    const LiftPerturbation psi = random_psi(rng, 2, 6, 0.1);
    for (const SobolevParams prm : {kDefault, SobolevParams{0.35, 6.0, 6.0}}) {
      const LiftObjective o = lift_objective(x0, psi, prm);
      CHECK(o.value == doctest::Approx(inhom_norm(admissible_lift(x0, psi), prm).per_level[1]).epsilon(1e-12));
      const GroupPath target = canonical_lift(brownian(rng, 2, 6));
      const LiftObjective od = lift_objective(x0, psi, prm, &target);
      CHECK(od.value == doctest::Approx(inhom_dist(admissible_lift(x0, psi), target, prm).per_level[1]).epsilon(1e-12));
    }
  }
  const GroupPath flat = level1_path(SampledPath::constant(2, 4, std::vector<double>{1.0, 2.0}));
  GroupPath x0 = admissible_lift(lv_extend(flat, kDefault), LiftPerturbation(2, 4));
  const LiftObjective z = lift_objective(x0, LiftPerturbation(2, 4), kDefault);
  CHECK(z.value == 0.0);
  for (double g : z.gradient.values()) CHECK(g == 0.0);
  CHECK_THROWS_AS(lift_objective(x0, LiftPerturbation(2, 4), SobolevParams{0.6, 2.0, 2.0}), ParameterError);
  CHECK_THROWS_AS(lift_objective(x0, LiftPerturbation(2, 3), kDefault), StructuralError);
}

TEST_CASE("gradient against central differences") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 6; ++i) {
    const SobolevParams prm = i % 2 ? SobolevParams{0.45, 3.0, 3.0} : kDefault;
    const GroupPath x0 = canonical_lift(brownian(rng, 3, 4));
    const LiftPerturbation psi = random_psi(rng, 3, 4, 0.2);
    const LiftObjective o = lift_objective(x0, psi, prm);
    double worst = 0.0;
    for (std::size_t k = 1; k < psi.size(); ++k)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const double h = 1e-6;
          LiftPerturbation up = psi, dn = psi;
          up.set(k, a, b, psi.at(k, a, b) + h);
          dn.set(k, a, b, psi.at(k, a, b) - h);
          const double fd = (lift_objective(x0, up, prm).value - lift_objective(x0, dn, prm).value) / (2 * h);
          const double g = o.gradient.at(k, a, b);
          worst = std::max(worst, std::abs(fd - g) / std::max(std::abs(g), 1e-3));
          CHECK(o.gradient.at(k, b, a) == -g);
        }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("convexity probe") {
  std::mt19937_64 rng(43);
  const GroupPath x0 = canonical_lift(brownian(rng, 3, 5));
  for (int i = 0; i < 50; ++i) {
    const LiftPerturbation p1 = random_psi(rng, 3, 5, 0.5), p2 = random_psi(rng, 3, 5, 0.5);
    const double mid = lift_objective(x0, 0.5 * p1 + 0.5 * p2, kDefault).value;
    const double avg = 0.5 * (lift_objective(x0, p1, kDefault).value + lift_objective(x0, p2, kDefault).value);
    CHECK(mid <= avg + 1e-12);
  }
}

TEST_CASE("minimizer cancels a pure perturbation") {
  std::mt19937_64 rng(44);
  const GroupPath base = lv_extend(level1_path(SampledPath::constant(3, 5, std::vector<double>{0.0, 1.0, 2.0})), kDefault);
  const LiftPerturbation psi0 = random_psi(rng, 3, 5, 1.0);
  const GroupPath x0 = admissible_lift(base, psi0);
  const OptimalLift r = minimize(x0, kDefault);
  CHECK(r.objective_initial > 0.1);
  CHECK(r.objective_final < 1e-7);
  CHECK(r.grad_norm < 1e-8);
  for (std::size_t k = 0; k < psi0.size(); ++k) CHECK(std::abs(r.psi.at(k, 0, 2) + psi0.at(k, 0, 2)) < 1e-7);
}

TEST_CASE("straight line keeps its canonical lift") {
  const GroupPath x0 = canonical_lift(linear(3, 6, {1.0, -2.0, 0.5}));
  const OptimalLift r = minimize(x0, kDefault);
  CHECK(r.objective_final == doctest::Approx(r.objective_initial).epsilon(1e-8));
  for (double v : r.psi.values()) CHECK(std::abs(v) < 1e-8);
  CHECK(max_level2_diff(r.lift, x0) < 1e-8);
}

TEST_CASE("restarts agree and descent is monotone") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 3; ++i) {
    const GroupPath x0 = canonical_lift(brownian(rng, 2, 6));
    const OptimizeOptions opts;
    const OptimalLift ref = minimize(x0, kDefault, opts);
    CHECK(ref.grad_norm < opts.tol);
    CHECK(ref.objective_final <= ref.objective_initial);
    for (std::size_t h = 1; h < ref.history.size(); ++h) CHECK(ref.history[h] <= ref.history[h - 1] * (1 + 1e-15));
    CHECK(chen_residual(ref.lift) < 1e-11);
    CHECK(geometricity_residual(ref.lift) < 1e-11);
    for (int s = 0; s < 4; ++s) {
      const LiftPerturbation start = random_psi(rng, 2, 6, 0.5);
      const OptimalLift r = minimize(x0, kDefault, opts, &start);
      CHECK(inhom_dist(r.lift, ref.lift, kDefault).value < 10 * opts.tol);
    }
  }
}

TEST_CASE("max_iter exhaustion carries the last iterate") {
  std::mt19937_64 rng(46);
  const GroupPath x0 = canonical_lift(brownian(rng, 2, 6));
  try {
    minimize(x0, kDefault, OptimizeOptions{1e-12, 2});
    FAIL("expected a convergence error");
  } catch (const LiftConvergenceError& e) {
    CHECK(e.last.iterations <= 2);
    CHECK(e.last.objective_final <= e.last.objective_initial);
    CHECK(e.last.lift.size() == x0.size());
  }
  CHECK_THROWS_AS(minimize(x0, kDefault, OptimizeOptions{0.0, 10}), ParameterError);
}

TEST_CASE("joint lift") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 5; ++i) {
    const GroupPath x = canonical_lift(brownian(rng, 2, 5));
    const GroupPath y = canonical_lift(brownian(rng, 1 + i % 2, 5));
    const GroupPath z0 = joint_initial(x, y);
    CHECK(chen_residual(z0) < 1e-11);
    CHECK(geometricity_residual(z0) < 1e-11);
    const OptimalLift r = joint_minimize(x, y, kDefault);
    const int k = x.dim(), l = y.dim();
    double proj = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      for (int a = 1; a <= k; ++a) {
        proj = std::max(proj, std::abs(r.lift[t].coeff({a}) - x[t].coeff({a})));
        for (int b = 1; b <= k; ++b) proj = std::max(proj, std::abs(r.lift[t].coeff({a, b}) - x[t].coeff({a, b})));
      }
      for (int a = 1; a <= l; ++a) {
        proj = std::max(proj, std::abs(r.lift[t].coeff({k + a}) - y[t].coeff({a})));
        for (int b = 1; b <= l; ++b)
          proj = std::max(proj, std::abs(r.lift[t].coeff({k + a, k + b}) - y[t].coeff({a, b})));
      }
    }
    CHECK(proj == 0.0);
    CHECK(r.objective_final <= r.objective_initial);
    CHECK(geometricity_residual(r.lift) < 1e-11);
  }
  // Two straight lines: the cross block stays at the symmetric product.
  const GroupPath lx = canonical_lift(linear(1, 5, {1.0})), ly = canonical_lift(linear(1, 5, {-0.5}));
  const OptimalLift r = joint_minimize(lx, ly, kDefault);
  for (std::size_t t = 0; t < lx.size(); ++t) {
    const double s = r.lift[t].coeff({1}) * r.lift[t].coeff({2});
    CHECK(r.lift[t].coeff({1, 2}) == doctest::Approx(0.5 * s).epsilon(1e-8));
    CHECK(r.lift[t].coeff({2, 1}) == doctest::Approx(0.5 * s).epsilon(1e-8));
  }
  // Constant y: x padded with zeros.
  const GroupPath cy = lv_extend(level1_path(SampledPath::constant(1, 5, std::vector<double>{2.0})), kDefault);
  const GroupPath x = canonical_lift(brownian(rng, 2, 5));
  const OptimalLift rc = joint_minimize(x, cy, kDefault);
  for (std::size_t t = 0; t < x.size(); ++t)
    for (int a = 1; a <= 2; ++a) {
      CHECK(std::abs(rc.lift[t].coeff({a, 3})) < 1e-8);
      CHECK(std::abs(rc.lift[t].coeff({3, a})) < 1e-8);
    }
  CHECK_THROWS_AS(joint_minimize(x, cy, SobolevParams{0.3, 4.0, 4.0}), ParameterError);
  CHECK_THROWS_AS(joint_initial(x, canonical_lift(brownian(rng, 1, 4))), StructuralError);
}
