// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "roughlift/algebra.hpp"

namespace roughlift {

// Points in R^d at times k 2^{-J}, k = 0..2^J, on [0,1].
class SampledPath {
 public:
  SampledPath() = default;
  // `values` is row-major with 2^depth + 1 rows of `dim` entries.
  SampledPath(int dim, int depth, std::vector<double> values);
  static SampledPath constant(int dim, int depth, std::span<const double> point);

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  std::size_t size() const { return (std::size_t{1} << depth_) + 1; }
  double time(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(size() - 1); }

  std::span<const double> point(std::size_t k) const {
    return {values_.data() + k * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  double at(std::size_t k, int i) const { return values_[k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i)]; }
  std::vector<double> increment(std::size_t k0, std::size_t k1) const;
  const std::vector<double>& values() const { return values_; }

  // Single coordinate as a 1-dim path.
  SampledPath component(int i) const;

 private:
  int dim_ = 0;
  int depth_ = 0;
  std::vector<double> values_;
};

class GroupPath {
 public:
  GroupPath() = default;
  GroupPath(int dim, int level, int depth, std::vector<GroupElement> elements);

  int dim() const { return dim_; }
  int level() const { return level_; }
  int depth() const { return depth_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& operator[](std::size_t k) const { return elements_[k]; }
  const std::vector<GroupElement>& elements() const { return elements_; }

  // X_s^{-1} X_t for grid indices s <= t.
  GroupElement increment(std::size_t s, std::size_t t) const;
  // Increment over the m-th dyadic interval of depth j.
  GroupElement dyadic_increment(int j, std::size_t m) const;

  // Level-1 coordinates of every element.
  SampledPath level1() const;

 private:
  int dim_ = 0;
  int level_ = 0;
  int depth_ = 0;
  std::vector<GroupElement> elements_;
};

// Increments of a group-valued object over every dyadic interval, indexed
// [j][m] for depth j = 0..J and m = 0..2^j-1.
struct IncrementPyramid {
  int dim = 0;
  int level = 0;
  int depth = 0;
  std::vector<std::vector<GroupElement>> by_depth;
  const GroupElement& at(int j, std::size_t m) const { return by_depth[static_cast<std::size_t>(j)][m]; }
};

IncrementPyramid increments_of(const GroupPath& x);

// Grid index of dyadic time t; StructuralError if t is off the depth grid.
std::size_t grid_index(double t, int depth);

// Max over all grid triples s<=u<=t of |X_{s,u} X_{u,t} - X_{s,t}|_inf.
double chen_residual(const GroupPath& x);
// Max over all increments of |Sym(pi_2) - 1/2 x (x) x|_inf.
double geometricity_residual(const GroupPath& x);
// Max coefficient difference between pi_{level}(x_k) and base_k over all k;
// against a sampled path the reference is the increment base_k - base_0.
double projection_residual(const GroupPath& x, const GroupPath& base);
double projection_residual(const GroupPath& x, const SampledPath& base);

}  // namespace roughlift
