// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "roughlift/errors.hpp"
#include "roughlift/norms.hpp"
#include "roughlift/paths.hpp"

namespace roughlift {

// Antisymmetric d x d matrices psi_k at the grid times, psi_0 = 0.
class LiftPerturbation {
 public:
  LiftPerturbation() = default;
  LiftPerturbation(int dim, int depth);  // zero
  // Row-major d x d blocks, one per grid time; checked for antisymmetry.
  LiftPerturbation(int dim, int depth, std::vector<double> values);

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  std::size_t size() const { return (std::size_t{1} << depth_) + 1; }
  double at(std::size_t k, int a, int b) const { return values_[index(k, a, b)]; }
  // Sets psi_k[a][b] = v and psi_k[b][a] = -v (a != b, k >= 1).
  void set(std::size_t k, int a, int b, double v);
  const std::vector<double>& values() const { return values_; }

  LiftPerturbation& operator+=(const LiftPerturbation& o);
  friend LiftPerturbation operator*(double s, LiftPerturbation p);
  friend LiftPerturbation operator+(LiftPerturbation a, const LiftPerturbation& b) { return a += b; }

 private:
  std::size_t index(std::size_t k, int a, int b) const {
    const auto d = static_cast<std::size_t>(dim_);
    return (k * d + static_cast<std::size_t>(a)) * d + static_cast<std::size_t>(b);
  }
  int dim_ = 0;
  int depth_ = 0;
  std::vector<double> values_;
};

// Same level-1 path, level-2 values shifted by psi_t, so every level-2
// increment over [s,t] moves by psi_t - psi_s.
GroupPath admissible_lift(const GroupPath& x0, const LiftPerturbation& psi);

struct LiftObjective {
  double value = 0.0;         // level-2 term of the discrete inhomogeneous norm
  LiftPerturbation gradient;  // d value / d psi_k[a][b] for a < b, mirrored
};

// Level-2 term of the discrete inhomogeneous norm (or, with a target, of
// the distance to the target) of admissible_lift(x0, psi). Needs p > 2.
LiftObjective lift_objective(const GroupPath& x0, const LiftPerturbation& psi, const SobolevParams& prm,
                             const GroupPath* target = nullptr);

struct OptimizeOptions {
  double tol = 1e-8;  // sup-norm of the gradient in the solver's coordinates
  int max_iter = 10000;
};

struct OptimalLift {
  LiftPerturbation psi;
  GroupPath lift;
  double objective_initial = 0.0;  // at psi = 0
  double objective_final = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> history;  // objective after each accepted step
};

struct LiftConvergenceError : ConvergenceError {
  LiftConvergenceError(const std::string& w, OptimalLift last) : ConvergenceError(w), last(std::move(last)) {}
  OptimalLift last;
};

// Minimizes lift_objective over all antisymmetric perturbations. `start`
// overrides the zero initial point.
OptimalLift minimize(const GroupPath& x0, const SobolevParams& prm, const OptimizeOptions& opts = {},
                     const LiftPerturbation* start = nullptr, const GroupPath* target = nullptr);

// Lift over R^{k+l} whose diagonal blocks are x and y; only the cross
// areas between the two groups of coordinates move.
GroupPath joint_initial(const GroupPath& x, const GroupPath& y);
OptimalLift joint_minimize(const GroupPath& x, const GroupPath& y, const SobolevParams& prm,
                           const OptimizeOptions& opts = {});

}  // namespace roughlift
