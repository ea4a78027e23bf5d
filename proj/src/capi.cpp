// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/roughlift.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "roughlift/errors.hpp"
#include "roughlift/experiments.hpp"
#include "roughlift/io.hpp"
#include "roughlift/lyons_victoir.hpp"
#include "roughlift/norms.hpp"
#include "roughlift/optimal_lift.hpp"
#include "roughlift/reconstruction.hpp"
#include "roughlift/rng.hpp"
#include "roughlift/signatures.hpp"
#include "roughlift/wavelet.hpp"

struct rl_path {
  roughlift::SampledPath path;
};

struct rl_lift {
  roughlift::GroupPath path;
  std::string metadata = "{}";
};

namespace {

using namespace roughlift;
using json = nlohmann::ordered_json;

thread_local std::string g_last_error;

rl_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::structural:
      return RL_ERR_STRUCTURAL;
    case ErrorKind::parameter:
      return RL_ERR_PARAMETER;
    case ErrorKind::convergence:
      return RL_ERR_CONVERGENCE;
    case ErrorKind::parse:
      return RL_ERR_PARSE;
  }
  return RL_ERR_INTERNAL;
}

template <class F>
rl_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return RL_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw StructuralError(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SobolevParams params(rl_params p) { return SobolevParams{p.alpha, p.p, p.q}; }

OptimizeOptions optimize_options(const rl_optimize_options* o) {
  OptimizeOptions out;
  if (o) {
    out.tol = o->tol;
    out.max_iter = o->max_iter;
  }
  return out;
}

LiftPerturbation random_start(int dim, int depth, std::uint64_t seed, std::uint32_t restart) {
  LiftPerturbation psi(dim, depth);
  const Philox4x32::Key key = Philox4x32::key_from_seed(seed);
  std::uint32_t pair = 0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b, ++pair)
      for (std::size_t k = 1; k < psi.size(); k += 4) {
        const auto z = normals_from_block(Philox4x32::block({static_cast<std::uint32_t>(k / 4), pair, restart, 1}, key));
        for (std::size_t r = 0; r < 4 && k + r < psi.size(); ++r) psi.set(k + r, a, b, 0.5 * z[r]);
      }
  return psi;
}

}  // namespace

extern "C" {

const char* rl_version(void) { return "0.1.0"; }

const char* rl_last_error(void) { return g_last_error.c_str(); }

void rl_string_free(char* s) { std::free(s); }

rl_status rl_path_read_csv(const char* file, rl_path** out) {
  return guarded([&] {
    require(file, "file");
    require(out, "out");
    *out = new rl_path{read_path_csv(file)};
  });
}

rl_status rl_path_parse_csv(const char* text, rl_path** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rl_path{parse_path_csv(text)};
  });
}

rl_status rl_path_from_values(int dim, int depth, const double* values, rl_path** out) {
  return guarded([&] {
    require(values, "values");
    require(out, "out");
    if (dim < 1 || depth < 0 || depth > 24) throw ParameterError("dim must be >= 1 and depth in 0..24");
    const std::size_t n = ((std::size_t{1} << depth) + 1) * static_cast<std::size_t>(dim);
    *out = new rl_path{SampledPath(dim, depth, std::vector<double>(values, values + n))};
  });
}

void rl_path_free(rl_path* path) { delete path; }
int rl_path_dim(const rl_path* path) { return path ? path->path.dim() : 0; }
int rl_path_depth(const rl_path* path) { return path ? path->path.depth() : -1; }

rl_status rl_norm_report_json(const rl_path* path, rl_params prm, char** json_out) {
  return guarded([&] {
    require(path, "path");
    require(json_out, "json_out");
    const SobolevParams s = params(prm);
    std::vector<NormReport> reports{sobolev_norm_dyadic(path->path, s), sobolev_norm_integral(path->path, s),
                                    besov_norm_dyadic(path->path, s)};
    *json_out = dup_string(norm_reports_json(reports));
  });
}

rl_status rl_compute_lift(const rl_path* path, rl_method method, rl_params prm, int j_max, rl_lift** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const SobolevParams s = params(prm);
    s.validate(true);
    json meta;
    GroupPath g;
    switch (method) {
      case RL_METHOD_CANONICAL:
        g = canonical_lift(path->path, path->path.depth(), std::clamp(s.rough_level(), 2, 3));
        meta["method"] = "canonical";
        break;
      case RL_METHOD_LV:
        g = full_lift(path->path, s);
        meta["method"] = "lv";
        break;
      case RL_METHOD_RECONSTRUCT: {
        const ReconstructionLift r = lift2_reconstruction(path->path, s, build_wavelet(), j_max);
        g = r.path;
        meta["method"] = "reconstruction";
        meta["J_max"] = r.j_max;
        meta["eps_truncation"] = r.eps_truncation;
        break;
      }
      default:
        throw ParameterError("unknown lift method " + std::to_string(static_cast<int>(method)));
    }
    meta["alpha"] = s.alpha;
    meta["p"] = s.p;
    meta["projection_residual"] = projection_residual(g, path->path);
    *out = new rl_lift{std::move(g), meta.dump()};
  });
}

rl_status rl_lift_to_json(const rl_lift* lift, char** json_out) {
  return guarded([&] {
    require(lift, "lift");
    require(json_out, "json_out");
    *json_out = dup_string(group_path_json(lift->path, lift->metadata));
  });
}

rl_status rl_lift_from_json(const char* text, rl_lift** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    std::string meta;
    GroupPath g = parse_group_path_json(text, &meta);
    *out = new rl_lift{std::move(g), std::move(meta)};
  });
}

void rl_lift_free(rl_lift* lift) { delete lift; }
int rl_lift_dim(const rl_lift* lift) { return lift ? lift->path.dim() : 0; }
int rl_lift_level(const rl_lift* lift) { return lift ? lift->path.level() : 0; }
int rl_lift_depth(const rl_lift* lift) { return lift ? lift->path.depth() : -1; }

rl_status rl_lift_coeff(const rl_lift* lift, size_t k, const int* word, int length, double* out) {
  return guarded([&] {
    require(lift, "lift");
    require(out, "out");
    if (length < 0 || length > lift->path.level() || (length > 0 && !word))
      throw StructuralError("word length outside 0..level");
    if (k >= lift->path.size()) throw StructuralError("grid index out of range");
    const Word w(word, word + length);
    for (int letter : w)
      if (letter < 1 || letter > lift->path.dim()) throw StructuralError("letter outside 1..dim");
    *out = lift->path[k].coeff(w);
  });
}

rl_status rl_lift_projection_residual(const rl_lift* lift, const rl_path* base, double* out) {
  return guarded([&] {
    require(lift, "lift");
    require(base, "base");
    require(out, "out");
    *out = projection_residual(lift->path, base->path);
  });
}

rl_status rl_lift_chen_residual(const rl_lift* lift, double* out) {
  return guarded([&] {
    require(lift, "lift");
    require(out, "out");
    *out = chen_residual(lift->path);
  });
}

rl_status rl_lift_geometricity_residual(const rl_lift* lift, double* out) {
  return guarded([&] {
    require(lift, "lift");
    require(out, "out");
    *out = geometricity_residual(lift->path);
  });
}

rl_status rl_lift_inhom_norm(const rl_lift* lift, rl_params prm, double* out) {
  return guarded([&] {
    require(lift, "lift");
    require(out, "out");
    *out = inhom_norm(lift->path, params(prm)).value;
  });
}

void rl_optimize_options_default(rl_optimize_options* opts) {
  if (!opts) return;
  const OptimizeOptions d;
  opts->tol = d.tol;
  opts->max_iter = d.max_iter;
  opts->restarts = 0;
  opts->seed = 42;
}

rl_status rl_optimize(const rl_lift* x0, rl_params prm, const rl_optimize_options* opts, rl_lift** out,
                      char** report_json) {
  return guarded([&] {
    require(x0, "x0");
    require(out, "out");
    const SobolevParams s = params(prm);
    const OptimizeOptions o = optimize_options(opts);
    const int restarts = opts ? opts->restarts : 0;
    if (restarts < 0) throw ParameterError("restarts must be >= 0");
    if (geometricity_residual(x0->path) > 1e-8) throw StructuralError("input lift is not weakly geometric");
    auto emit = [&](const OptimalLift& r, double agreement) {
      json meta{{"method", "optimal"},
                {"alpha", s.alpha},
                {"p", s.p},
                {"objective_initial", r.objective_initial},
                {"objective_final", r.objective_final}};
      *out = new rl_lift{r.lift, meta.dump()};
      if (report_json) *report_json = dup_string(optimal_lift_report_json(r, agreement));
    };
    try {
      const OptimalLift r = minimize(x0->path, s, o);
      double agreement = restarts > 0 ? 0.0 : -1.0;
      for (int i = 0; i < restarts; ++i) {
        const LiftPerturbation start =
            random_start(x0->path.dim(), x0->path.depth(), opts->seed, static_cast<std::uint32_t>(i));
        const OptimalLift ri = minimize(x0->path, s, o, &start);
        agreement = std::max(agreement, inhom_dist(ri.lift, r.lift, s).value);
      }
      emit(r, agreement);
    } catch (const LiftConvergenceError& e) {
      emit(e.last, -1.0);
      throw;
    }
  });
}

rl_status rl_joint_minimize(const rl_lift* x, const rl_lift* y, rl_params prm, const rl_optimize_options* opts,
                            rl_lift** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    const OptimalLift r = joint_minimize(x->path, y->path, params(prm), optimize_options(opts));
    *out = new rl_lift{r.lift, json{{"method", "joint"}, {"objective_final", r.objective_final}}.dump()};
  });
}

void rl_experiment_config_default(rl_experiment_config* config) {
  if (!config) return;
  const ExperimentConfig d;
  config->dim = d.dim;
  config->depth = d.depth;
  config->m_min = d.m_min;
  config->m_max = d.m_max;
  config->samples = d.samples;
  config->seed = d.seed;
  config->threads = d.threads;
  config->prm = rl_params{d.prm.alpha, d.prm.p, d.prm.q};
  config->tol = d.opts.tol;
  config->max_iter = d.opts.max_iter;
  config->optimize = d.optimize ? 1 : 0;
}

rl_status rl_experiment(const rl_experiment_config* config, char** decay_csv_out, char** summary_json_out) {
  return guarded([&] {
    require(config, "config");
    ExperimentConfig c;
    c.dim = config->dim;
    c.depth = config->depth;
    c.m_min = config->m_min;
    c.m_max = config->m_max;
    c.samples = config->samples;
    c.seed = config->seed;
    c.threads = config->threads;
    c.prm = params(config->prm);
    c.opts.tol = config->tol;
    c.opts.max_iter = config->max_iter;
    c.optimize = config->optimize != 0;
    const ExperimentReport r = run_experiment(c);
    if (decay_csv_out) *decay_csv_out = dup_string(decay_csv(r));
    if (summary_json_out) *summary_json_out = dup_string(summary_json(r));
  });
}

rl_status rl_write_file_atomic(const char* file, const char* content) {
  return guarded([&] {
    require(file, "file");
    require(content, "content");
    write_file_atomic(file, content);
  });
}

}  // extern "C"
