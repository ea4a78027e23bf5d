// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughlift/norms.hpp"
#include "roughlift/optimal_lift.hpp"
#include "roughlift/paths.hpp"

namespace roughlift {

struct ExperimentConfig {
  int dim = 2;
  int depth = 12;  // fine depth M
  int m_min = 3;
  int m_max = 8;
  SobolevParams prm{0.4, 4.0, 4.0};
  int samples = 200;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: hardware concurrency
  OptimizeOptions opts;
  bool optimize = true;  // run optimal_vs_stratonovich as well as the decay

  // m_min >= 0, m_max < M, alpha in (1/3, 1/2), alpha p > 1.
  void validate() const;
};

// Brownian path on the depth-M grid: per-step N(0, 2^{-M}) increments in
// each coordinate. Sample s draws from Philox4x32-10 with key = seed and
// counter {step / 4, coordinate, s lo, s hi}.
SampledPath sample_bm(const ExperimentConfig& config, std::uint64_t sample);

// S(B^M): the canonical lift at the finest depth.
GroupPath stratonovich_proxy(const SampledPath& b);

// rho(S(B^{m+1}), S(B^m)) for m = m_min..m_max (discrete inhomogeneous).
std::vector<double> distance_decay(const SampledPath& b, const SobolevParams& prm, int m_min, int m_max);

// F^m(X) = rho(X, S(B^m)).
double stratonovich_functional(const GroupPath& x, const SampledPath& b, int m, const SobolevParams& prm);

struct OptimalityStep {
  int m = 0;
  double functional_min = 0.0;    // F^m(X*)
  double dist_to_proxy = 0.0;     // rho(X*, S(B^M))
  double proxy_to_coarse = 0.0;   // rho(S(B^M), S(B^m))
  int iterations = 0;
  bool bound_holds() const { return dist_to_proxy <= 2.0 * proxy_to_coarse + 1e-6; }
};

// Minimizes F^m over the lifts of B, starting from the proxy, for every m
// in the config's range.
std::vector<OptimalityStep> optimal_vs_stratonovich(const SampledPath& b, const ExperimentConfig& config);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<int> ms;
  std::vector<std::vector<double>> decay;  // [sample][m - m_min]
  std::vector<double> decay_mean;
  std::vector<double> decay_stderr;
  double decay_slope = 0.0;  // least-squares slope of log2(decay_mean) over m
  std::vector<std::vector<OptimalityStep>> optimality;  // empty unless config.optimize
  std::vector<double> optimal_mean;                     // mean dist_to_proxy per m

  double slope_bound() const { return 2.0 * config.prm.alpha - 1.0 + 0.15; }
  bool slope_ok() const { return decay_slope <= slope_bound(); }
  bool bound_ok() const;             // every sample, every m
  bool optimal_decreasing() const;   // strict decrease of optimal_mean
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// Plot-ready decay table: m, mean, stderr, optimal_mean (if any), then one
// column per sample.
std::string decay_csv(const ExperimentReport& r, bool per_sample = true);
// Config, fitted slope and pass/fail flags.
std::string summary_json(const ExperimentReport& r);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace roughlift
