// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/optimal_lift.hpp"

#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace roughlift {

LiftPerturbation::LiftPerturbation(int dim, int depth)
    : dim_(dim), depth_(depth),
      values_(((std::size_t{1} << depth) + 1) * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0) {}

LiftPerturbation::LiftPerturbation(int dim, int depth, std::vector<double> values)
    : dim_(dim), depth_(depth), values_(std::move(values)) {
  const auto d = static_cast<std::size_t>(dim);
  if (values_.size() != size() * d * d) throw StructuralError("perturbation has the wrong number of entries");
  for (std::size_t k = 0; k < size(); ++k)
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        const double u = at(k, a, b), v = at(k, b, a);
        if (k == 0 && (u != 0.0 || v != 0.0)) throw StructuralError("perturbation must vanish at time 0");
        if (std::abs(u + v) > 1e-14 * std::max(1.0, std::abs(u)))
          throw StructuralError("perturbation is not antisymmetric at grid index " + std::to_string(k));
      }
}

void LiftPerturbation::set(std::size_t k, int a, int b, double v) {
  if (a == b || k == 0) throw StructuralError("perturbation: only off-diagonal entries at k >= 1 are free");
  values_[index(k, a, b)] = v;
  values_[index(k, b, a)] = -v;
}

LiftPerturbation& LiftPerturbation::operator+=(const LiftPerturbation& o) {
  if (o.dim_ != dim_ || o.depth_ != depth_) throw StructuralError("perturbations differ in shape");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

LiftPerturbation operator*(double s, LiftPerturbation p) {
  for (double& v : p.values_) v *= s;
  return p;
}

GroupPath admissible_lift(const GroupPath& x0, const LiftPerturbation& psi) {
  if (x0.level() != 2) throw StructuralError("admissible_lift needs a level-2 path");
  if (psi.dim() != x0.dim() || psi.depth() != x0.depth())
    throw StructuralError("perturbation and path differ in dim/depth");
  const auto d = static_cast<std::size_t>(x0.dim());
  std::vector<GroupElement> els;
  els.reserve(x0.size());
  for (std::size_t k = 0; k < x0.size(); ++k) {
    TruncatedTensor t = x0[k].tensor();
    auto l2 = t.level_span(2);
    for (std::size_t i = 0; i < d * d; ++i) l2[i] += psi.values()[k * d * d + i];
    els.emplace_back(std::move(t));
  }
  return GroupPath(x0.dim(), 2, x0.depth(), std::move(els));
}

namespace {

// Phi(psi) = sum_j w_j sum_m |C_{j,m} + psi_t - psi_s|^{p/2} over dyadic
// intervals, with psi restricted to the free antisymmetric pairs.
class Problem {
 public:
  Problem(const GroupPath& x0, const GroupPath* target, const SobolevParams& prm,
          std::vector<std::pair<int, int>> pairs)
      : d_(static_cast<std::size_t>(x0.dim())), J_(x0.depth()), e_(prm.p / 2.0), pairs_(std::move(pairs)) {
    prm.validate(true);
    if (!(prm.p > 2.0) || std::isinf(prm.p)) throw ParameterError("optimal lift needs finite p > 2");
    if (x0.level() != 2) throw StructuralError("optimal lift needs a level-2 path");
    const DyadicLevel2 a = dyadic_level2(x0);
    c_ = a.l2;
    if (target) {
      if (target->dim() != x0.dim() || target->depth() != x0.depth() || target->level() != 2)
        throw StructuralError("target and path differ in dim/level/depth");
      const DyadicLevel2 b = dyadic_level2(*target);
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.l2[i];
    }
    for (int j = 0; j <= J_; ++j) w_.push_back(std::exp2(j * (prm.alpha * prm.p - 1.0)));
    for (int j = 0; j < J_; ++j) scale_.push_back(std::exp2(-0.5 * j * (prm.alpha * prm.p - 1.0)));
  }

  std::size_t grid() const { return (std::size_t{1} << J_) + 1; }
  std::size_t per_pair() const { return std::size_t{1} << J_; }
  std::size_t num_params() const { return pairs_.size() * per_pair(); }
  int dim() const { return static_cast<int>(d_); }
  int depth() const { return J_; }

  // Phi and dPhi/dpsi (full d x d blocks per grid time).
  double phi(const std::vector<double>& psi, std::vector<double>* grad) const {
    return accumulate(c_, psi, grad, false);
  }

  // Phi(base + dpsi) - Phi(base), where base holds the per-interval
  // matrices C + psi_t - psi_s of an anchor point. Each term is formed as
  // a relative change, so the result keeps full precision even when it is
  // far below the rounding of Phi itself.
  double change(const std::vector<double>& base, const std::vector<double>& dpsi, std::vector<double>* grad) const {
    return accumulate(base, dpsi, grad, true);
  }

  // Per-interval matrices C + psi_t - psi_s.
  std::vector<double> rebase(const std::vector<double>& psi) const {
    const std::size_t dd = d_ * d_;
    std::vector<double> out(c_);
    std::size_t idx = 0;
    for (int j = 0; j <= J_; ++j) {
      const std::size_t len = std::size_t{1} << (J_ - j);
      for (std::size_t k = 0; k < (std::size_t{1} << j); ++k, ++idx)
        for (std::size_t i = 0; i < dd; ++i) out[idx * dd + i] += psi[(k * len + len) * dd + i] - psi[k * len * dd + i];
    }
    return out;
  }

  // Hierarchical (Faber-Schauder) coordinates -> psi blocks.
  std::vector<double> synthesize(const double* c) const {
    const std::size_t dd = d_ * d_, n = grid();
    std::vector<double> psi(n * dd, 0.0), v(n);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const double* cp = c + p * per_pair();
      v[0] = 0.0;
      v[n - 1] = cp[0];
      for (int j = 0; j < J_; ++j) {
        const std::size_t half = std::size_t{1} << (J_ - j - 1);
        for (std::size_t k = 0; k < (std::size_t{1} << j); ++k) {
          const std::size_t l = 2 * k * half, mid = l + half, r = l + 2 * half;
          v[mid] = 0.5 * (v[l] + v[r]) + scale_[static_cast<std::size_t>(j)] * cp[(std::size_t{1} << j) + k];
        }
      }
      const auto [a, b] = pairs_[p];
      for (std::size_t k = 0; k < n; ++k) {
        psi[k * dd + static_cast<std::size_t>(a) * d_ + static_cast<std::size_t>(b)] = v[k];
        psi[k * dd + static_cast<std::size_t>(b) * d_ + static_cast<std::size_t>(a)] = -v[k];
      }
    }
    return psi;
  }

  // Adjoint of synthesize applied to dPhi/dpsi.
  void pullback(const std::vector<double>& gpsi, double* gc) const {
    const std::size_t dd = d_ * d_, n = grid();
    std::vector<double> g(n);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [a, b] = pairs_[p];
      for (std::size_t k = 0; k < n; ++k)
        g[k] = gpsi[k * dd + static_cast<std::size_t>(a) * d_ + static_cast<std::size_t>(b)] -
               gpsi[k * dd + static_cast<std::size_t>(b) * d_ + static_cast<std::size_t>(a)];
      double* cp = gc + p * per_pair();
      for (int j = J_ - 1; j >= 0; --j) {
        const std::size_t half = std::size_t{1} << (J_ - j - 1);
        for (std::size_t k = 0; k < (std::size_t{1} << j); ++k) {
          const std::size_t l = 2 * k * half, mid = l + half, r = l + 2 * half;
          cp[(std::size_t{1} << j) + k] = scale_[static_cast<std::size_t>(j)] * g[mid];
          g[l] += 0.5 * g[mid];
          g[r] += 0.5 * g[mid];
        }
      }
      cp[0] = g[n - 1];
    }
  }

  // Inverse of synthesize on the free pairs.
  std::vector<double> analyze(const LiftPerturbation& psi) const {
    std::vector<double> c(num_params());
    const std::size_t n = grid();
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [a, b] = pairs_[p];
      double* cp = c.data() + p * per_pair();
      cp[0] = psi.at(n - 1, a, b);
      for (int j = 0; j < J_; ++j) {
        const std::size_t half = std::size_t{1} << (J_ - j - 1);
        for (std::size_t k = 0; k < (std::size_t{1} << j); ++k) {
          const std::size_t l = 2 * k * half, mid = l + half, r = l + 2 * half;
          cp[(std::size_t{1} << j) + k] =
              (psi.at(mid, a, b) - 0.5 * (psi.at(l, a, b) + psi.at(r, a, b))) / scale_[static_cast<std::size_t>(j)];
        }
      }
    }
    return c;
  }

  double reported(double phi) const { return std::pow(phi, 1.0 / e_); }

 private:
  double accumulate(const std::vector<double>& base, const std::vector<double>& psi, std::vector<double>* grad,
                    bool relative) const {
    const std::size_t dd = d_ * d_;
    if (grad) grad->assign(psi.size(), 0.0);
    std::vector<double> m(dd);
    CompensatedSum total;
    std::size_t idx = 0;
    for (int j = 0; j <= J_; ++j) {
      const std::size_t len = std::size_t{1} << (J_ - j);
      const double w = w_[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < (std::size_t{1} << j); ++k, ++idx) {
        const std::size_t s = k * len, t = s + len;
        double n2 = 0.0, b2 = 0.0, dn2 = 0.0;
        for (std::size_t i = 0; i < dd; ++i) {
          const double b = base[idx * dd + i], dm = psi[t * dd + i] - psi[s * dd + i];
          m[i] = b + dm;
          n2 += m[i] * m[i];
          b2 += b * b;
          dn2 += dm * (2.0 * b + dm);
        }
        if (!relative || b2 == 0.0) {
          if (n2 > 0.0) total.add(w * std::pow(n2, 0.5 * e_));
        } else {
          total.add(w * std::pow(b2, 0.5 * e_) * std::expm1(0.5 * e_ * std::log1p(dn2 / b2)));
        }
        if (grad && n2 > 0.0) {
          const double f = w * e_ * std::pow(n2, 0.5 * e_ - 1.0);
          for (std::size_t i = 0; i < dd; ++i) {
            (*grad)[t * dd + i] += f * m[i];
            (*grad)[s * dd + i] -= f * m[i];
          }
        }
      }
    }
    return total.value();
  }

  std::size_t d_;
  int J_;
  double e_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> c_;
  std::vector<double> w_;
  std::vector<double> scale_;
};

class CeresObjective : public ceres::FirstOrderFunction {
 public:
  CeresObjective(const Problem& p, std::vector<double> base) : p_(p), base_(std::move(base)) {}
  // params are the step from the anchor, in hierarchical coordinates.
  bool Evaluate(const double* params, double* cost, double* gradient) const override {
    const std::vector<double> dpsi = p_.synthesize(params);
    std::vector<double> g;
    *cost = p_.change(base_, dpsi, gradient ? &g : nullptr);
    if (gradient) p_.pullback(g, gradient);
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return static_cast<int>(p_.num_params()); }

 private:
  const Problem& p_;
  std::vector<double> base_;
};

class History : public ceres::IterationCallback {
 public:
  History(std::vector<double>* out, double offset) : out_(out), offset_(offset) {}
  ceres::CallbackReturnType operator()(const ceres::IterationSummary& s) override {
    if (s.iteration > 0 && s.step_is_successful) out_->push_back(offset_ + s.cost);
    return ceres::SOLVER_CONTINUE;
  }

 private:
  std::vector<double>* out_;
  double offset_;
};

std::vector<std::pair<int, int>> all_pairs(int d) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) out.emplace_back(a, b);
  return out;
}

OptimalLift solve(const GroupPath& x0, const SobolevParams& prm, const OptimizeOptions& opts,
                  const LiftPerturbation* start, const GroupPath* target, std::vector<std::pair<int, int>> pairs) {
  if (!(opts.tol > 0.0)) throw ParameterError("tol must be positive");
  if (opts.max_iter < 1) throw ParameterError("max_iter must be >= 1");
  const Problem problem(x0, target, prm, std::move(pairs));
  std::vector<double> c(problem.num_params(), 0.0);
  if (start) {
    if (start->dim() != x0.dim() || start->depth() != x0.depth())
      throw StructuralError("start perturbation and path differ in dim/depth");
    c = problem.analyze(*start);
  }
  OptimalLift out;
  out.objective_initial =
      problem.reported(problem.phi(std::vector<double>(problem.grid() * x0.dim() * x0.dim(), 0.0), nullptr));

  auto finish = [&](int iterations) {
    std::vector<double> g(c.size(), 0.0), gpsi;
    const std::vector<double> psi = problem.synthesize(c.data());
    const double phi = problem.phi(psi, &gpsi);
    problem.pullback(gpsi, g.data());
    out.grad_norm = 0.0;
    for (double v : g) out.grad_norm = std::max(out.grad_norm, std::abs(v));
    out.objective_final = problem.reported(phi);
    out.iterations = iterations;
    out.psi = LiftPerturbation(problem.dim(), problem.depth(), psi);
    out.lift = admissible_lift(x0, out.psi);
  };

  if (c.empty()) {
    finish(0);
    return out;
  }
  // Ceres stops once a line search can no longer make progress; restarting
  // from the reached point with a fresh anchor recovers the lost precision.
  std::vector<double> phi_history;
  std::string message;
  int iterations = 0;
  for (int round = 0; round < 20 && iterations < opts.max_iter; ++round) {
    const std::vector<double> psi = problem.synthesize(c.data());
    History history(&phi_history, problem.phi(psi, nullptr));
    ceres::GradientProblemSolver::Options o;
    o.line_search_direction_type = ceres::LBFGS;
    o.line_search_type = ceres::WOLFE;
    o.max_num_iterations = opts.max_iter - iterations;
    o.gradient_tolerance = opts.tol;
    o.function_tolerance = 0.0;
    o.parameter_tolerance = 0.0;
    o.logging_type = ceres::SILENT;
    o.minimizer_progress_to_stdout = false;
    o.callbacks.push_back(&history);
    ceres::GradientProblem gp(new CeresObjective(problem, problem.rebase(psi)));
    ceres::GradientProblemSolver::Summary summary;
    std::vector<double> step(c.size(), 0.0);
    ceres::Solve(o, gp, step.data(), &summary);
    const int used = std::max(0, static_cast<int>(summary.iterations.size()) - 1);
    iterations += used;
    message = summary.message;
    bool moved = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      moved = moved || step[i] != 0.0;
      c[i] += step[i];
    }
    finish(iterations);
    if (out.grad_norm < opts.tol || !moved) break;
  }
  for (double v : phi_history) out.history.push_back(problem.reported(v));
  if (!(out.grad_norm < opts.tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "optimizer stopped after %d iterations with gradient norm %.3e >= tol %.3e (",
                  out.iterations, out.grad_norm, opts.tol);
    throw LiftConvergenceError(buf + message + ")", out);
  }
  return out;
}

}  // namespace

LiftObjective lift_objective(const GroupPath& x0, const LiftPerturbation& psi, const SobolevParams& prm,
                             const GroupPath* target) {
  if (psi.dim() != x0.dim() || psi.depth() != x0.depth())
    throw StructuralError("perturbation and path differ in dim/depth");
  const Problem problem(x0, target, prm, all_pairs(x0.dim()));
  std::vector<double> g;
  const double phi = problem.phi(psi.values(), &g);
  LiftObjective out;
  out.value = problem.reported(phi);
  // d(phi^{2/p}) = (2/p) phi^{2/p-1} dphi; along a free entry psi[a][b]
  // moves together with psi[b][a] = -psi[a][b].
  const double f = phi > 0.0 ? out.value / (0.5 * prm.p * phi) : 0.0;
  const auto d = static_cast<std::size_t>(x0.dim());
  std::vector<double> grad(g.size(), 0.0);
  for (std::size_t k = 1; k < psi.size(); ++k)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) {
        const double v = f * (g[(k * d + a) * d + b] - g[(k * d + b) * d + a]);
        grad[(k * d + a) * d + b] = v;
        grad[(k * d + b) * d + a] = -v;
      }
  out.gradient = LiftPerturbation(x0.dim(), x0.depth(), std::move(grad));
  return out;
}

OptimalLift minimize(const GroupPath& x0, const SobolevParams& prm, const OptimizeOptions& opts,
                     const LiftPerturbation* start, const GroupPath* target) {
  return solve(x0, prm, opts, start, target, all_pairs(x0.dim()));
}

GroupPath joint_initial(const GroupPath& x, const GroupPath& y) {
  if (x.level() != 2 || y.level() != 2) throw StructuralError("joint lift needs level-2 inputs");
  if (x.depth() != y.depth()) throw StructuralError("joint lift inputs live on different grids");
  const auto k = static_cast<std::size_t>(x.dim()), l = static_cast<std::size_t>(y.dim());
  const std::size_t d = k + l;
  std::vector<GroupElement> els;
  els.reserve(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    TruncatedTensor z(static_cast<int>(d), 2);
    z.data()[0] = 1.0;
    auto z1 = z.level_span(1);
    auto z2 = z.level_span(2);
    const auto x1 = x[t].tensor().level_span(1), x2 = x[t].tensor().level_span(2);
    const auto y1 = y[t].tensor().level_span(1), y2 = y[t].tensor().level_span(2);
    for (std::size_t a = 0; a < k; ++a) z1[a] = x1[a];
    for (std::size_t b = 0; b < l; ++b) z1[k + b] = y1[b];
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) z2[a * d + b] = x2[a * k + b];
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = 0; b < l; ++b) z2[(k + a) * d + k + b] = y2[a * l + b];
    // exp(log x + log y): the cross blocks are half the symmetric product.
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < l; ++b) {
        z2[a * d + k + b] = 0.5 * x1[a] * y1[b];
        z2[(k + b) * d + a] = 0.5 * y1[b] * x1[a];
      }
    els.emplace_back(std::move(z));
  }
  return GroupPath(static_cast<int>(d), 2, x.depth(), std::move(els));
}

OptimalLift joint_minimize(const GroupPath& x, const GroupPath& y, const SobolevParams& prm,
                           const OptimizeOptions& opts) {
  if (!(prm.alpha > 1.0 / 3.0 && prm.alpha < 0.5))
    throw ParameterError("joint lift needs alpha in (1/3, 1/2), got alpha = " + std::to_string(prm.alpha));
  const GroupPath z0 = joint_initial(x, y);
  std::vector<std::pair<int, int>> cross;
  for (int a = 0; a < x.dim(); ++a)
    for (int b = 0; b < y.dim(); ++b) cross.emplace_back(a, x.dim() + b);
  return solve(z0, prm, opts, nullptr, nullptr, std::move(cross));
}

}  // namespace roughlift
