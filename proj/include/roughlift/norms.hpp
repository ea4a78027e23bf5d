// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "roughlift/paths.hpp"

namespace roughlift {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SobolevParams {
  double alpha = 0.4;
  double p = 4.0;
  double q = 4.0;  // only read by the Besov norm

  // alpha in (0,1), p in (1,inf], q in [1,inf]; with `rough` also alpha*p > 1.
  void validate(bool rough = true) const;
  // [1/alpha]
  int rough_level() const;
};

struct NormReport {
  std::string norm_name;
  double alpha = 0.0;
  double p = 0.0;
  double q = 0.0;
  int depth = 0;
  double value = 0.0;
  std::vector<double> per_scale;  // weighted inner sum per depth j
};

struct InhomReport {
  double value = 0.0;
  std::vector<double> per_level;  // term k = 1..N; value is their sum
};

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

NormReport sobolev_norm_dyadic(const SampledPath& x, const SobolevParams& prm);
NormReport sobolev_norm_dyadic(const GroupPath& x, const SobolevParams& prm);
NormReport sobolev_norm_dyadic(const IncrementPyramid& x, const SobolevParams& prm);

NormReport sobolev_norm_integral(const SampledPath& x, const SobolevParams& prm);
NormReport sobolev_norm_integral(const GroupPath& x, const SobolevParams& prm);
// Same quadrature for points sampled with spacing `step` (any window length).
double sobolev_norm_integral(std::span<const double> values, int dim, double step,
                             const SobolevParams& prm);

NormReport besov_norm_dyadic(const SampledPath& x, const SobolevParams& prm);
NormReport besov_norm_dyadic(const GroupPath& x, const SobolevParams& prm);

InhomReport inhom_norm(const GroupPath& x, const SobolevParams& prm, bool discrete = true);
InhomReport inhom_dist(const GroupPath& x1, const GroupPath& x2, const SobolevParams& prm,
                       bool discrete = true);

double holder_defect(const SampledPath& x, const SobolevParams& prm);
double holder_defect(const GroupPath& x, const SobolevParams& prm);

// (sum_j 2^{j(alpha p-1)} sum_m d(a_{j,m}, b_{j,m})^p)^{1/p} between two
// increment pyramids of equal shape.
double dyadic_increment_distance(const IncrementPyramid& a, const IncrementPyramid& b,
                                 const SobolevParams& prm);

// Level-1 and level-2 increments of a level-2 path over every dyadic
// interval, flattened depth-major: interval (j,m) sits at 2^j - 1 + m.
struct DyadicLevel2 {
  int dim = 0;
  int depth = 0;
  std::vector<double> l1;  // count * d
  std::vector<double> l2;  // count * d * d
  std::size_t count() const { return (std::size_t{2} << depth) - 1; }
};
DyadicLevel2 dyadic_level2(const GroupPath& x);

}  // namespace roughlift
