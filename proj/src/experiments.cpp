// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "roughlift/errors.hpp"
#include "roughlift/rng.hpp"
#include "roughlift/signatures.hpp"

namespace roughlift {

void ExperimentConfig::validate() const {
  prm.validate(true);
  if (!(prm.alpha > 1.0 / 3.0 && prm.alpha < 0.5))
    throw ParameterError("experiment needs alpha in (1/3, 1/2), got alpha = " + std::to_string(prm.alpha));
  if (dim < 1) throw ParameterError("experiment dim must be >= 1");
  if (depth < 1 || depth > 24) throw ParameterError("experiment depth must be in 1..24");
  if (m_min < 0 || m_max < m_min || m_max >= depth)
    throw ParameterError("experiment needs 0 <= m_min <= m_max < depth, got m = " + std::to_string(m_min) + ".." +
                         std::to_string(m_max) + ", depth " + std::to_string(depth));
  if (samples < 1) throw ParameterError("experiment needs at least one sample");
  if (threads < 0) throw ParameterError("threads must be >= 0");
}

SampledPath sample_bm(const ExperimentConfig& config, std::uint64_t sample) {
  const auto d = static_cast<std::size_t>(config.dim);
  const std::size_t steps = std::size_t{1} << config.depth;
  const double sd = std::sqrt(std::ldexp(1.0, -config.depth));
  const Philox4x32::Key key = Philox4x32::key_from_seed(config.seed);
  std::vector<double> v((steps + 1) * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < steps; b += 4) {
      const Philox4x32::Counter ctr{static_cast<std::uint32_t>(b / 4), static_cast<std::uint32_t>(i),
                                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
      const std::array<double, 4> z = normals_from_block(Philox4x32::block(ctr, key));
      for (std::size_t r = 0; r < 4 && b + r < steps; ++r) {
        const std::size_t k = b + r + 1;
        v[k * d + i] = v[(k - 1) * d + i] + sd * z[r];
      }
    }
  return SampledPath(config.dim, config.depth, std::move(v));
}

GroupPath stratonovich_proxy(const SampledPath& b) { return canonical_lift(b); }

std::vector<double> distance_decay(const SampledPath& b, const SobolevParams& prm, int m_min, int m_max) {
  if (m_min < 0 || m_max < m_min || m_max >= b.depth())
    throw ParameterError("distance_decay needs 0 <= m_min <= m_max < depth");
  std::vector<double> out;
  GroupPath coarse = canonical_lift(b, m_min, 2);
  for (int m = m_min; m <= m_max; ++m) {
    GroupPath fine = canonical_lift(b, m + 1, 2);
    out.push_back(inhom_dist(fine, coarse, prm).value);
    coarse = std::move(fine);
  }
  return out;
}

double stratonovich_functional(const GroupPath& x, const SampledPath& b, int m, const SobolevParams& prm) {
  if (x.depth() != b.depth() || x.dim() != b.dim()) throw StructuralError("functional needs a common grid");
  return inhom_dist(x, canonical_lift(b, m, x.level()), prm).value;
}

std::vector<OptimalityStep> optimal_vs_stratonovich(const SampledPath& b, const ExperimentConfig& config) {
  const GroupPath proxy = stratonovich_proxy(b);
  std::vector<OptimalityStep> out;
  for (int m = config.m_min; m <= config.m_max; ++m) {
    const GroupPath coarse = canonical_lift(b, m, 2);
    const OptimalLift r = minimize(proxy, config.prm, config.opts, nullptr, &coarse);
    OptimalityStep s;
    s.m = m;
    s.functional_min = inhom_dist(r.lift, coarse, config.prm).value;
    s.dist_to_proxy = inhom_dist(r.lift, proxy, config.prm).value;
    s.proxy_to_coarse = inhom_dist(proxy, coarse, config.prm).value;
    s.iterations = r.iterations;
    out.push_back(s);
  }
  return out;
}

bool ExperimentReport::bound_ok() const {
  for (const auto& row : optimality)
    for (const OptimalityStep& s : row)
      if (!s.bound_holds()) return false;
  return true;
}

bool ExperimentReport::optimal_decreasing() const {
  if (optimal_mean.empty()) return false;
  for (std::size_t i = 1; i < optimal_mean.size(); ++i)
    if (!(optimal_mean[i] < optimal_mean[i - 1])) return false;
  return true;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw StructuralError("fit_slope needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport r;
  r.config = config;
  for (int m = config.m_min; m <= config.m_max; ++m) r.ms.push_back(m);
  const auto n = static_cast<std::size_t>(config.samples);
  r.decay.resize(n);
  if (config.optimize) r.optimality.resize(n);

  // Each sample writes only its own slot; the reduction below runs in
  // sample order, so results do not depend on the thread count.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t s = next++; s < n; s = next++) {
      try {
        const SampledPath b = sample_bm(config, s);
        r.decay[s] = distance_decay(b, config.prm, config.m_min, config.m_max);
        if (config.optimize) r.optimality[s] = optimal_vs_stratonovich(b, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(n, 256)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const std::size_t cols = r.ms.size();
  r.decay_mean.assign(cols, 0.0);
  r.decay_stderr.assign(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    CompensatedSum sum, sq;
    for (std::size_t s = 0; s < n; ++s) sum.add(r.decay[s][c]);
    const double mean = sum.value() / static_cast<double>(n);
    for (std::size_t s = 0; s < n; ++s) sq.add((r.decay[s][c] - mean) * (r.decay[s][c] - mean));
    r.decay_mean[c] = mean;
    r.decay_stderr[c] = n > 1 ? std::sqrt(sq.value() / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  }
  if (cols >= 2) {
    std::vector<double> x(r.ms.begin(), r.ms.end()), y;
    for (double v : r.decay_mean) y.push_back(std::log2(v));
    r.decay_slope = fit_slope(x, y);
  }
  if (config.optimize) {
    r.optimal_mean.assign(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
      CompensatedSum sum;
      for (std::size_t s = 0; s < n; ++s) sum.add(r.optimality[s][c].dist_to_proxy);
      r.optimal_mean[c] = sum.value() / static_cast<double>(n);
    }
  }
  return r;
}

std::string decay_csv(const ExperimentReport& r, bool per_sample) {
  std::ostringstream os;
  os.precision(17);
  os << "m,mean,stderr";
  if (!r.optimal_mean.empty()) os << ",optimal_mean";
  if (per_sample)
    for (std::size_t s = 0; s < r.decay.size(); ++s) os << ",sample_" << s;
  os << '\n';
  for (std::size_t c = 0; c < r.ms.size(); ++c) {
    os << r.ms[c] << ',' << r.decay_mean[c] << ',' << r.decay_stderr[c];
    if (!r.optimal_mean.empty()) os << ',' << r.optimal_mean[c];
    if (per_sample)
      for (const auto& row : r.decay) os << ',' << row[c];
    os << '\n';
  }
  return os.str();
}

std::string summary_json(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  nlohmann::ordered_json j;
  j["config"] = {{"dim", c.dim},          {"depth", c.depth},     {"m_min", c.m_min},     {"m_max", c.m_max},
                 {"alpha", c.prm.alpha},  {"p", c.prm.p},         {"q", c.prm.q},         {"samples", c.samples},
                 {"seed", c.seed},        {"tol", c.opts.tol},    {"max_iter", c.opts.max_iter},
                 {"optimize", c.optimize}};
  j["decay"] = {{"m", r.ms}, {"mean", r.decay_mean}, {"stderr", r.decay_stderr}};
  j["decay_slope"] = r.decay_slope;
  j["decay_slope_bound"] = r.slope_bound();
  j["decay_slope_ok"] = r.slope_ok();
  if (c.optimize) {
    j["optimal_mean"] = r.optimal_mean;
    j["factor2_bound_ok"] = r.bound_ok();
    j["optimal_decreasing"] = r.optimal_decreasing();
  }
  return j.dump(2) + "\n";
}

}  // namespace roughlift
