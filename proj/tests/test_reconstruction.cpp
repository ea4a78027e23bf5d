// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "roughlift/errors.hpp"
#include "roughlift/reconstruction.hpp"
#include "test_support.hpp"

using namespace roughlift;
using namespace testing_support;

namespace {

const SobolevParams kDefault{0.4, 4.0, 4.0};

const WaveletBasis& db6() {
  static const WaveletBasis b = build_wavelet(WaveletFamily::db6, 12);
  return b;
}

SampledPath from_fn(int depth, const auto& f) {
  const std::size_t n = (std::size_t{1} << depth) + 1;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(static_cast<double>(k) / static_cast<double>(n - 1));
  return SampledPath(1, depth, std::move(v));
}

SampledPath join(const SampledPath& a, const SampledPath& b) {
  std::vector<double> v;
  for (std::size_t k = 0; k < a.size(); ++k) {
    v.push_back(a.at(k, 0));
    v.push_back(b.at(k, 0));
  }
  return SampledPath(2, a.depth(), std::move(v));
}

double level2_dyadic_sum(const GroupPath& g, double alpha, double p) {
  double s = 0.0;
  for (int j = 0; j <= g.depth(); ++j) {
    double acc = 0.0;
    for (std::size_t m = 0; m < (std::size_t{1} << j); ++m) {
      const GroupElement inc = g.dyadic_increment(j, m);
      acc += std::pow(level_norm(inc.tensor(), 2), p / 2.0);
    }
    s += std::exp2(j * (alpha * p - 1.0)) * acc;
  }
  return s;
}

}  // namespace

TEST_CASE("wavelet invariants") {
  for (WaveletFamily f : {WaveletFamily::db4, WaveletFamily::db6}) {
    const WaveletBasis b = build_wavelet(f, 12);
    const WaveletDiagnostics d = wavelet_diagnostics(b);
    INFO(b.name);
    REQUIRE(d.moments.size() == static_cast<std::size_t>(b.vanishing_moments));
    for (int k = 0; k <= 2; ++k) CHECK(d.moments[static_cast<std::size_t>(k)] < 1e-6);
    CHECK(d.orthonormality < 1e-6);
    CHECK(d.refinement < 1e-6);
    CHECK(d.partition < 1e-5);
    CHECK(b.Phi.back() == 1.0);
    CHECK(b.Psi.back() == 0.0);
    CHECK(b.Psi.front() == 0.0);
  }
  // Samples at L and L+1 agree on the common grid.
  const WaveletBasis coarse = build_wavelet(WaveletFamily::db6, 10);
  const WaveletBasis fine = build_wavelet(WaveletFamily::db6, 11);
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.phi.size(); ++i)
    worst = std::max({worst, std::abs(coarse.phi[i] - fine.phi[2 * i]), std::abs(coarse.psi[i] - fine.psi[2 * i])});
  CHECK(worst < 1e-6);
  CHECK(db6().psi_at(-1.0) == 0.0);
  CHECK(db6().Phi_at(20.0) == 1.0);
  CHECK_NOTHROW(require_regularity(db6(), kDefault));
  CHECK_THROWS_AS(build_wavelet(WaveletFamily::db6, 0), ParameterError);
  CHECK_THROWS_AS(parse_wavelet_family("haar"), ParameterError);
  CHECK(parse_wavelet_family("db4") == WaveletFamily::db4);
}

TEST_CASE("extend_path") {
  const std::vector<double> c{0.7};
  const ExtendedPath flat = extend_path(SampledPath::constant(1, 4, c));
  for (double v : flat.values) CHECK(v == 0.7);
  CHECK(flat.integral(2.5, 0) == doctest::Approx(0.7 * 3.5));

  std::mt19937_64 rng(30);
  const SampledPath b = brownian(rng, 2, 5);
  const ExtendedPath e = extend_path(b);
  CHECK(e.rows() == 3 * 32 + 1);
  for (long k = 0; k <= 32; ++k)
    for (int i = 0; i < 2; ++i) {
      CHECK(e.at(k, i) == b.at(static_cast<std::size_t>(k), i));
      CHECK(e.at(-k, i) == b.at(static_cast<std::size_t>(k), i));
      CHECK(e.at(32 + k, i) == b.at(static_cast<std::size_t>(32 - k), i));
    }
  CHECK(e.at(-100, 0) == e.at(-32, 0));
  CHECK(e.at(500, 1) == e.at(64, 1));
  // The integral matches a trapezoid sum on the rows.
  double s = 0.0;
  for (long k = -32; k < 16; ++k) s += 0.5 * (e.at(k, 1) + e.at(k + 1, 1)) / 32.0;
  CHECK(e.integral(0.5, 1) == doctest::Approx(s).epsilon(1e-13));

  for (int i = 0; i < 30; ++i) {
    const SampledPath x = i % 2 ? brownian(rng, 2, 6) : smooth(rng, 2, 6);
    const ExtendedPath ex = extend_path(x);
    const double inner = sobolev_norm_integral(x, kDefault).value;
    const double outer = sobolev_norm_integral(ex.values, 2, ex.step(), kDefault);
    CHECK(outer <= 3.0 * inner);
  }
}

TEST_CASE("wavelet coefficients of a derivative") {
  // Linear W: the only slope jumps sit at 0 and 1, so every wavelet
  // supported inside (0,1) sees a constant derivative.
  const SampledPath lin = from_fn(8, [](double t) { return 2.0 * t - 0.3; });
  for (int n = 4; n <= 10; ++n)
    for (long m = 1; m + 11 < (1L << n); m += 3) CHECK(std::abs(wavelet_coeff_dW(lin, db6(), n, m)) < 1e-12);

  // W = 2^{-n} Psi(2^n t - m) has W' = 2^{-n/2} psi^n_y.
  const int n = 4;
  const long m = 2;
  const SampledPath w = from_fn(10, [&](double t) { return std::ldexp(db6().Psi_at(std::ldexp(t, n) - m), -n); });
  CHECK(wavelet_coeff_dW(w, db6(), n, m) == doctest::Approx(std::exp2(-0.5 * n)).epsilon(1e-3));
  CHECK(std::abs(wavelet_coeff_dW(w, db6(), n, m + 1)) < 1e-3);
  CHECK(std::abs(wavelet_coeff_dW(w, db6(), n + 1, 2 * m)) < 1e-3);

  std::mt19937_64 rng(31);
  const SampledPath w1 = brownian(rng, 1, 7);
  const SampledPath w2 = brownian(rng, 1, 7);
  std::vector<double> sum(w1.values());
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += 3.0 * w2.values()[k];
  const SampledPath w12(1, 7, sum);
  for (int lv = 0; lv <= 9; ++lv)
    for (long mm = -10; mm < (1L << lv); mm += 1 + (1L << lv) / 16) {
      const double lhs = wavelet_coeff_dW(w12, db6(), lv, mm);
      const double rhs = wavelet_coeff_dW(w1, db6(), lv, mm) + 3.0 * wavelet_coeff_dW(w2, db6(), lv, mm);
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
  for (long mm = -10; mm <= 0; ++mm) {
    const double lhs = father_coeff_dW(w12, db6(), mm);
    CHECK(std::abs(lhs - father_coeff_dW(w1, db6(), mm) - 3.0 * father_coeff_dW(w2, db6(), mm)) < 1e-12);
  }
  CHECK_THROWS_AS(wavelet_coeff_dW(brownian(rng, 2, 3), db6(), 0, 0), StructuralError);
}

TEST_CASE("reconstruction series") {
  std::mt19937_64 rng(32);
  const SampledPath w = brownian(rng, 1, 6);
  const std::vector<double> zero{0.0}, c{1.7};
  const ReconstructionSeries s0 = reconstruct(SampledPath::constant(1, 6, zero), w, kDefault, db6(), 8);
  CHECK(s0.father.empty());
  for (const auto& level : s0.mother) CHECK(level.empty());

  const ReconstructionSeries sc = reconstruct(SampledPath::constant(1, 6, c), w, kDefault, db6(), 8);
  for (const auto& [m, a] : sc.father) CHECK(a == doctest::Approx(1.7 * father_coeff_dW(w, db6(), m)).epsilon(1e-13));
  for (int n = 0; n <= 8; ++n)
    for (const auto& [m, a] : sc.mother[static_cast<std::size_t>(n)])
      CHECK(a == doctest::Approx(1.7 * wavelet_coeff_dW(w, db6(), n, m)).epsilon(1e-13));

  // Bilinearity in (Y, W).
  const SampledPath y1 = brownian(rng, 1, 6), y2 = smooth(rng, 1, 6), w2 = brownian(rng, 1, 6);
  std::vector<double> ysum(y1.values()), wsum(w.values());
  for (std::size_t k = 0; k < ysum.size(); ++k) {
    ysum[k] += -2.0 * y2.values()[k];
    wsum[k] += 0.5 * w2.values()[k];
  }
  const SampledPath ys(1, 6, ysum), ws(1, 6, wsum);
  const SampledPath za = primitive_Z(reconstruct(ys, ws, kDefault, db6(), 8), db6());
  const SampledPath z11 = primitive_Z(reconstruct(y1, w, kDefault, db6(), 8), db6());
  const SampledPath z12 = primitive_Z(reconstruct(y1, w2, kDefault, db6(), 8), db6());
  const SampledPath z21 = primitive_Z(reconstruct(y2, w, kDefault, db6(), 8), db6());
  const SampledPath z22 = primitive_Z(reconstruct(y2, w2, kDefault, db6(), 8), db6());
  for (std::size_t k = 0; k < za.size(); ++k) {
    const double rhs = z11.at(k, 0) + 0.5 * z12.at(k, 0) - 2.0 * z21.at(k, 0) - z22.at(k, 0);
    CHECK(std::abs(za.at(k, 0) - rhs) < 1e-12);
  }

  CHECK_THROWS_AS(reconstruct(y1, w, SobolevParams{0.3, 8.0, 8.0}, db6(), 4), ParameterError);
  CHECK_THROWS_AS(reconstruct(y1, w, SobolevParams{0.45, 2.0, 2.0}, db6(), 4), ParameterError);
  CHECK_THROWS_AS(reconstruct(y1, brownian(rng, 1, 5), kDefault, db6(), 4), StructuralError);
}

TEST_CASE("primitive of the series") {
  ReconstructionSeries s;
  s.depth = 8;
  s.j_max = 0;
  s.mother.resize(1);
  CHECK(primitive_Z(s, db6()).values() == std::vector<double>(257, 0.0));
  // One coefficient at n = 0, y = 0: Z = Psi on [0,1].
  s.mother[0].emplace_back(0, 1.0);
  const SampledPath z = primitive_Z(s, db6());
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(z.at(k, 0) == doctest::Approx(db6().Psi_at(z.time(k))).epsilon(1e-14));

  // Constant Y: Z reproduces c (W - W_0) up to truncation.
  std::mt19937_64 rng(33);
  const SampledPath w = brownian(rng, 1, 6);
  const std::vector<double> c{-1.3};
  const SampledPath zc = primitive_Z(reconstruct(SampledPath::constant(1, 6, c), w, kDefault, db6(), 16), db6());
  CHECK(zc.at(0, 0) == 0.0);
  double err = 0.0;
  for (std::size_t k = 0; k < zc.size(); ++k) err = std::max(err, std::abs(zc.at(k, 0) + 1.3 * (w.at(k, 0) - w.at(0, 0))));
  MESSAGE("constant-Y primitive error at j_max 16: " << err);
  CHECK(err < 1e-3);
}

TEST_CASE("reconstruction lift") {
  const std::vector<double> c{0.4, -2.0};
  const ReconstructionLift flat = lift2_reconstruction(SampledPath::constant(2, 5, c), kDefault, db6());
  for (const GroupElement& g : flat.path.elements()) CHECK(max_abs_diff(g.tensor(), TruncatedTensor::unit(2, 2)) == 0.0);
  CHECK(flat.j_max == 10);
  CHECK(flat.eps_truncation == 0.0);

  const ReconstructionLift diag = lift2_reconstruction(linear(2, 6, {1.0, 1.0}), kDefault, db6());
  for (const GroupElement& g : diag.path.elements()) CHECK(std::abs(g.coeff({1, 2}) - g.coeff({2, 1})) <= diag.eps_truncation);

  std::mt19937_64 rng(34);
  for (int i = 0; i < 4; ++i) {
    const SampledPath x = i % 2 ? brownian(rng, 3, 5) : smooth(rng, 2, 6);
    const ReconstructionLift l = lift2_reconstruction(x, kDefault, db6());
    CHECK(chen_residual(l.path) < 1e-10);
    CHECK(geometricity_residual(l.path) < 1e-10);
    CHECK(projection_residual(l.path, x) < 1e-12);
    CHECK(std::isfinite(level2_dyadic_sum(l.path, 0.4, 4.0)));
  }
  CHECK_THROWS_AS(lift2_reconstruction(brownian(rng, 2, 4), SobolevParams{0.5, 4.0, 4.0}, db6()), ParameterError);
}

TEST_CASE("truncation bound for constant Y") {
  std::mt19937_64 rng(35);
  const SampledPath w = brownian(rng, 1, 6);
  const std::vector<double> c{0.9};
  const SampledPath x = join(SampledPath::constant(1, 6, c), w);
  double prev = kInf;
  for (int jm : {6, 8, 10, 12}) {
    const ReconstructionLift l = lift2_reconstruction(x, kDefault, db6(), jm);
    double worst = 0.0;
    for (std::size_t s = 0; s < l.path.size(); ++s)
      for (std::size_t t = s; t < l.path.size(); ++t) {
        const GroupElement inc = l.path.increment(s, t);
        worst = std::max({worst, std::abs(inc.coeff({1, 2})), std::abs(inc.coeff({2, 1}))});
      }
    MESSAGE("j_max " << jm << ": eps " << l.eps_truncation << ", max cross term " << worst);
    CHECK(worst <= l.eps_truncation);
    CHECK(l.eps_truncation < prev);
    prev = l.eps_truncation;
  }
}

TEST_CASE("level-2 sum stabilises in j_max") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 3; ++i) {
    const SampledPath x = brownian(rng, 2, 6);
    const double a = level2_dyadic_sum(lift2_reconstruction(x, kDefault, db6(), 10).path, 0.4, 4.0);
    const double b = level2_dyadic_sum(lift2_reconstruction(x, kDefault, db6(), 12).path, 0.4, 4.0);
    CHECK(std::abs(a - b) < 0.1 * b);
  }
}

TEST_CASE("Lipschitz probe") {
  std::mt19937_64 rng(37);
  const SampledPath x = brownian(rng, 2, 6);
  const LipschitzProbe same = lift_map_lipschitz_probe(x, x, kDefault, db6());
  CHECK(same.dist == 0.0);
  CHECK(same.ratio == 0.0);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    std::vector<double> v(x.values());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double t = x.time(k);
      v[2 * k] += eps * std::sin(std::numbers::pi * t);
      v[2 * k + 1] += eps * t * (1.0 - t);
    }
    const SampledPath xt(2, 6, v);
    const LipschitzProbe a = lift_map_lipschitz_probe(x, xt, kDefault, db6());
    const LipschitzProbe b = lift_map_lipschitz_probe(xt, x, kDefault, db6());
    CHECK(a.dist == doctest::Approx(b.dist).epsilon(1e-12));
    CHECK(a.ratio >= 1.0);
    MESSAGE("eps " << eps << ": ratio " << a.ratio);
  }
}
