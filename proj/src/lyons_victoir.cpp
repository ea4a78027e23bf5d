// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/lyons_victoir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlift/errors.hpp"
#include "roughlift/signatures.hpp"

namespace roughlift {

namespace {

// Keeps only the level-N part of a tensor.
TruncatedTensor top_layer(TruncatedTensor t) {
  for (int k = 0; k < t.level(); ++k)
    for (double& c : t.level_span(k)) c = 0.0;
  return t;
}

double weighted_pnorm(const std::vector<double>& norms, int m, const SobolevParams& prm) {
  CompensatedSum s;
  for (double v : norms) s.add(std::pow(v, prm.p));
  return std::exp2(m * (prm.alpha - 1.0 / prm.p)) * std::pow(s.value(), 1.0 / prm.p);
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

}  // namespace

GroupElement inject(const GroupElement& x) {
  const TruncatedTensor l = tensor_log(x.tensor());
  return GroupElement(tensor_exp(change_level(l, x.level() + 1)));
}

LvExtension lv_extend_tree(const GroupPath& x, const SobolevParams& prm) {
  prm.validate(true);
  const int N = x.level() + 1;
  if (N > kMaxSignatureLevel)
    throw ParameterError("extension above level " + std::to_string(kMaxSignatureLevel) + " is not supported");
  if (!(prm.alpha * N < 1.0))
    throw ParameterError("extension to level " + std::to_string(N) + " needs alpha < 1/" +
                         std::to_string(N) + ", got alpha = " + std::to_string(prm.alpha));
  const int J = x.depth();
  const IncrementPyramid base = increments_of(x);
  DyadicIncrementTree tree{x.dim(), N, J, {}, {}};
  tree.lifted.resize(static_cast<std::size_t>(J) + 1);
  tree.correction.resize(static_cast<std::size_t>(J) + 1);
  tree.lifted[0].push_back(inject(base.at(0, 0)));
  tree.correction[0].push_back(GroupElement::unit(x.dim(), N));
  const double shrink = std::exp2(-1.0 / N);
  for (int m = 0; m < J; ++m) {
    const auto& parents = tree.lifted[static_cast<std::size_t>(m)];
    auto& kids = tree.lifted[static_cast<std::size_t>(m + 1)];
    auto& ys = tree.correction[static_cast<std::size_t>(m + 1)];
    kids.reserve(parents.size() * 2);
    ys.reserve(parents.size() * 2);
    for (std::size_t k = 0; k < parents.size(); ++k) {
      const GroupElement il = inject(base.at(m + 1, 2 * k));
      const GroupElement ir = inject(base.at(m + 1, 2 * k + 1));
      const GroupElement e = il * ir * group_inverse(parents[k]);
      // e lies in exp(W_N) up to rounding; project onto that layer.
      const GroupElement central(tensor_exp(top_layer(tensor_log(e.tensor()))));
      const GroupElement y = group_inverse(dilation(central, shrink));
      kids.push_back(il * y);
      kids.push_back(ir * y);
      ys.push_back(y);
      ys.push_back(y);
    }
  }
  // Path values: base levels copied from x, top layer accumulated.
  std::vector<GroupElement> els;
  els.reserve(x.size());
  GroupElement cum = inject(x[0]);
  const auto& finest = tree.lifted[static_cast<std::size_t>(J)];
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) cum = cum * finest[k - 1];
    TruncatedTensor l = change_level(tensor_log(x[k].tensor()), N);
    l += top_layer(tensor_log(cum.tensor()));
    els.emplace_back(tensor_exp(l));
  }
  return {GroupPath(x.dim(), N, J, std::move(els)), std::move(tree)};
}

GroupPath lv_extend(const GroupPath& x, const SobolevParams& prm) { return lv_extend_tree(x, prm).path; }

GroupPath level1_path(const SampledPath& path) {
  std::vector<GroupElement> els;
  els.reserve(path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    TruncatedTensor t = TruncatedTensor::from_vector(1, path.increment(0, k));
    t.data()[0] = 1.0;
    els.emplace_back(std::move(t));
  }
  return GroupPath(path.dim(), 1, path.depth(), std::move(els));
}

GroupPath full_lift(const SampledPath& path, const SobolevParams& prm) {
  prm.validate(true);
  const double inv = 1.0 / prm.alpha;
  if (inv >= 2.0 - 1e-9 && is_integer(inv))
    throw ParameterError("1/alpha must not be an integer >= 2 (alpha = " + std::to_string(prm.alpha) +
                         "); the lift is only defined for 1/alpha outside N \\ {1}");
  const int N = prm.rough_level();
  GroupPath g = level1_path(path);
  while (g.level() < N) g = lv_extend(g, prm);
  return g;
}

bool RecursionCheck::holds() const {
  return std::all_of(slack.begin(), slack.end(), [](double s) { return s >= 0.0; });
}

RecursionCheck norm_recursion(const DyadicIncrementTree& tree, const GroupPath& base,
                              const SobolevParams& prm) {
  if (base.depth() != tree.depth || base.level() + 1 != tree.level)
    throw StructuralError("norm_recursion: tree and base path disagree");
  const int N = tree.level;
  RecursionCheck r;
  r.coef = std::exp2(prm.alpha - 1.0 / N - 1.0 / prm.p);
  r.constant = std::exp2(1.0 - 1.0 / N);
  const IncrementPyramid inc = increments_of(base);
  for (int m = 0; m <= tree.depth; ++m) {
    std::vector<double> ny, nx;
    for (const auto& y : tree.correction[static_cast<std::size_t>(m)]) ny.push_back(hom_norm(y));
    for (const auto& g : inc.by_depth[static_cast<std::size_t>(m)]) nx.push_back(hom_norm(g));
    r.a.push_back(weighted_pnorm(ny, m, prm));
    r.x.push_back(weighted_pnorm(nx, m, prm));
  }
  for (int m = 0; m < tree.depth; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    r.b.push_back(r.constant * (r.x[mu] + r.x[mu + 1]));
    r.slack.push_back(r.coef * r.a[mu] + r.b[mu] - r.a[mu + 1]);
  }
  return r;
}

double tree_consistency_residual(const DyadicIncrementTree& tree) {
  double worst = 0.0;
  for (int m = 0; m < tree.depth; ++m) {
    const auto& parents = tree.lifted[static_cast<std::size_t>(m)];
    const auto& kids = tree.lifted[static_cast<std::size_t>(m + 1)];
    for (std::size_t k = 0; k < parents.size(); ++k)
      worst = std::max(worst, max_abs_diff(parents[k].tensor(), (kids[2 * k] * kids[2 * k + 1]).tensor()));
  }
  return worst;
}

}  // namespace roughlift
