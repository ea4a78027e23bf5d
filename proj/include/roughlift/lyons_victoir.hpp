// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "roughlift/norms.hpp"
#include "roughlift/paths.hpp"

namespace roughlift {

// Per depth m and index k: the lifted increment and its correction Y,
// which lives in exp(W_N).
struct DyadicIncrementTree {
  int dim = 0;
  int level = 0;
  int depth = 0;
  std::vector<std::vector<GroupElement>> lifted;
  std::vector<std::vector<GroupElement>> correction;
};

// exp(log x) read in the level+1 algebra, so the new top layer of Lie
// coordinates is zero.
GroupElement inject(const GroupElement& x);

struct LvExtension {
  GroupPath path;
  DyadicIncrementTree tree;
};

// Lifts a level N-1 path to level N = x.level() + 1. Needs alpha < 1/N.
LvExtension lv_extend_tree(const GroupPath& x, const SobolevParams& prm);
GroupPath lv_extend(const GroupPath& x, const SobolevParams& prm);

// Level-1 group path (1, x_t - x_0).
GroupPath level1_path(const SampledPath& path);

// Repeated extension up to level [1/alpha]; 1/alpha must not be an
// integer >= 2.
GroupPath full_lift(const SampledPath& path, const SobolevParams& prm);

// a_m = 2^{m(alpha-1/p)} (sum_k |Y^m_k|^p)^{1/p}, x_m the same weighted
// norm of the base increments, b_m = C (x_m + x_{m+1}) with
// C = 2^{1-1/N}. `slack[m]` = coef * a_m + b_m - a_{m+1} with
// coef = 2^{alpha-1/N-1/p}.
struct RecursionCheck {
  std::vector<double> a;
  std::vector<double> x;
  std::vector<double> b;
  std::vector<double> slack;
  double coef = 0.0;
  double constant = 0.0;
  bool holds() const;
};

RecursionCheck norm_recursion(const DyadicIncrementTree& tree, const GroupPath& base,
                              const SobolevParams& prm);

// Max over nodes of |lifted(parent) - lifted(left) lifted(right)|_inf.
double tree_consistency_residual(const DyadicIncrementTree& tree);

}  // namespace roughlift
