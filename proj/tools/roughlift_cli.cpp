// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through roughlift.h.
//
// Exit codes: 0 success, 2 usage/parse, 3 parameter, 4 convergence,
// 1 internal failure.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "roughlift/roughlift.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParameter = 3;
constexpr int kExitConvergence = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(rl_status s) {
  switch (s) {
    case RL_OK:
      return 0;
    case RL_ERR_STRUCTURAL:
    case RL_ERR_PARSE:
      return kExitUsage;
    case RL_ERR_PARAMETER:
      return kExitParameter;
    case RL_ERR_CONVERGENCE:
      return kExitConvergence;
    default:
      return kExitInternal;
  }
}

void check(rl_status s) {
  if (s != RL_OK) throw Failure{exit_code(s), rl_last_error()};
}

struct PathDeleter {
  void operator()(rl_path* p) const { rl_path_free(p); }
};
struct LiftDeleter {
  void operator()(rl_lift* p) const { rl_lift_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { rl_string_free(p); }
};
using PathPtr = std::unique_ptr<rl_path, PathDeleter>;
using LiftPtr = std::unique_ptr<rl_lift, LiftDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

std::string read_text(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Failure{kExitUsage, file + ": cannot open for reading"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes atomically, or to stdout when `file` is empty.
void emit(const std::string& file, const char* content) {
  if (file.empty()) {
    std::fputs(content, stdout);
    return;
  }
  check(rl_write_file_atomic(file.c_str(), content));
}

struct Common {
  double alpha = 0.4;
  double p = 4.0;
  std::optional<double> q;
  double tol = 1e-8;
  int max_iter = 10000;
  std::uint64_t seed = 42;

  rl_params params() const { return rl_params{alpha, p, q.value_or(p)}; }
};

int run(int argc, char** argv) {
  CLI::App app{"Sobolev rough path lifts, norms and minimal-norm lifts"};
  app.set_version_flag("--version", rl_version());
  app.set_config("--config", "", "TOML/INI file mirroring the flags; flags given on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--alpha", c.alpha, "Sobolev regularity alpha")->capture_default_str();
  app.add_option("--p", c.p, "integrability p")->capture_default_str();
  app.add_option("--q", c.q, "Besov q (default: p)");
  app.add_option("--tol", c.tol, "optimizer gradient tolerance")->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "optimizer iteration cap")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for every random draw")->capture_default_str();

  std::string input, output;

  auto* norm = app.add_subcommand("norm", "norms of a sampled path (CSV t,x1..xd)");
  norm->add_option("--input,-i", input, "path CSV")->required();
  norm->add_option("--output,-o", output, "report JSON (default: stdout)");

  std::string method = "lv";
  int j_max = -1;
  auto* lift = app.add_subcommand("lift", "lift a sampled path to a rough path");
  lift->add_option("--input,-i", input, "path CSV")->required();
  lift->add_option("--output,-o", output, "lift JSON (default: stdout)");
  lift->add_option("--method", method, "lv | reconstruct | canonical")
      ->check(CLI::IsMember({"lv", "reconstruct", "canonical"}))
      ->capture_default_str();
  auto* jmax_opt = lift->add_option("--jmax", j_max, "series truncation for --method reconstruct");

  std::string report;
  int restarts = 0;
  auto* optimize = app.add_subcommand("optimize", "minimal-norm lift over the level-1 path of a lift JSON");
  optimize->add_option("--input,-i", input, "lift JSON")->required();
  optimize->add_option("--output,-o", output, "solution lift JSON (default: stdout)");
  optimize->add_option("--report", report, "solver report JSON");
  optimize->add_option("--restarts", restarts, "extra random starts for the agreement check")->capture_default_str();

  rl_experiment_config ec;
  rl_experiment_config_default(&ec);
  std::string out_dir = ".";
  bool no_optimize = false;
  auto* experiment = app.add_subcommand("experiment", "Brownian decay and Stratonovich optimality experiment");
  experiment->add_option("--dim", ec.dim, "Brownian dimension")->capture_default_str();
  experiment->add_option("--depth", ec.depth, "fine depth M")->capture_default_str();
  experiment->add_option("--m-min", ec.m_min)->capture_default_str();
  experiment->add_option("--m-max", ec.m_max)->capture_default_str();
  experiment->add_option("--samples", ec.samples)->capture_default_str();
  experiment->add_option("--threads", ec.threads, "worker threads, 0 = all cores")->capture_default_str();
  experiment->add_flag("--no-optimize", no_optimize, "skip the optimal-lift part");
  experiment->add_option("--out-dir", out_dir, "directory for decay.csv and summary.json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*jmax_opt && method != "reconstruct") throw Failure{kExitUsage, "--jmax only applies to --method reconstruct"};
  if (!(c.tol > 0.0) || c.max_iter < 1) throw Failure{kExitParameter, "--tol must be > 0 and --max-iter >= 1"};
  if (restarts < 0) throw Failure{kExitParameter, "--restarts must be >= 0"};
  const rl_params prm = c.params();

  if (*norm) {
    rl_path* raw = nullptr;
    check(rl_path_read_csv(input.c_str(), &raw));
    PathPtr path(raw);
    char* json = nullptr;
    check(rl_norm_report_json(path.get(), prm, &json));
    StringPtr js(json);
    emit(output, js.get());
    return 0;
  }

  if (*lift) {
    rl_path* raw = nullptr;
    check(rl_path_read_csv(input.c_str(), &raw));
    PathPtr path(raw);
    const rl_method m = method == "lv" ? RL_METHOD_LV : method == "reconstruct" ? RL_METHOD_RECONSTRUCT : RL_METHOD_CANONICAL;
    rl_lift* lraw = nullptr;
    check(rl_compute_lift(path.get(), m, prm, j_max, &lraw));
    LiftPtr l(lraw);
    double residual = 0.0;
    check(rl_lift_projection_residual(l.get(), path.get(), &residual));
    char* json = nullptr;
    check(rl_lift_to_json(l.get(), &json));
    StringPtr js(json);
    emit(output, js.get());
    std::fprintf(stderr, "projection residual: %.3e\n", residual);
    return 0;
  }

  if (*optimize) {
    const std::string text = read_text(input);
    rl_lift* raw = nullptr;
    check(rl_lift_from_json(text.c_str(), &raw));
    LiftPtr x0(raw);
    rl_optimize_options o;
    rl_optimize_options_default(&o);
    o.tol = c.tol;
    o.max_iter = c.max_iter;
    o.restarts = restarts;
    o.seed = c.seed;
    rl_lift* out = nullptr;
    char* rep = nullptr;
    const rl_status s = rl_optimize(x0.get(), prm, &o, &out, &rep);
    const std::string message = rl_last_error();
    LiftPtr sol(out);
    StringPtr rp(rep);
    if (sol) {  // also the last iterate when the solver gave up
      char* json = nullptr;
      check(rl_lift_to_json(sol.get(), &json));
      StringPtr js(json);
      emit(output, js.get());
    }
    if (rp && !report.empty()) emit(report, rp.get());
    if (rp && report.empty()) std::fputs(rp.get(), stderr);
    if (s != RL_OK) throw Failure{exit_code(s), message};
    return 0;
  }

  if (*experiment) {
    ec.seed = c.seed;
    ec.prm = prm;
    ec.tol = c.tol;
    ec.max_iter = c.max_iter;
    ec.optimize = no_optimize ? 0 : 1;
    char* csv = nullptr;
    char* summary = nullptr;
    check(rl_experiment(&ec, &csv, &summary));
    StringPtr cs(csv), sm(summary);
    std::error_code err;
    std::filesystem::create_directories(out_dir, err);
    if (err) throw Failure{kExitUsage, out_dir + ": " + err.message()};
    emit((std::filesystem::path(out_dir) / "decay.csv").string(), cs.get());
    emit((std::filesystem::path(out_dir) / "summary.json").string(), sm.get());
    std::fputs(sm.get(), stdout);
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::fprintf(stderr, "roughlift: error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "roughlift: error: %s\n", e.what());
    return kExitInternal;
  }
}
