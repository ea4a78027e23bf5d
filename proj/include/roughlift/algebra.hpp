// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace roughlift {

// Default tolerances; every check that uses one also accepts an override.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kAnalyticTol = 1e-9;

// Letters are 1-based: a word over R^d uses letters in {1..d}.
using Word = std::vector<int>;

std::size_t ipow(std::size_t base, int exp);
// Offset of level k inside the flat graded storage: 1 + d + ... + d^{k-1}.
std::size_t level_offset(int dim, int k);
std::size_t tensor_size(int dim, int level);
// Position of `w` inside its own level block (big-endian base-d digits).
std::size_t word_index(int dim, const Word& w);
Word word_from_index(int dim, int length, std::size_t index);

// Element of T^N(R^d). Storage is dense and graded; a word that was never
// written reads as 0.
class TruncatedTensor {
 public:
  TruncatedTensor() = default;
  TruncatedTensor(int dim, int level);

  static TruncatedTensor unit(int dim, int level);
  static TruncatedTensor from_vector(int level, std::span<const double> v);

  int dim() const { return dim_; }
  int level() const { return level_; }
  bool empty() const { return dim_ == 0; }

  double coeff(const Word& w) const;
  void set(const Word& w, double value);
  double scalar() const { return coeffs_[0]; }

  std::span<double> level_span(int k);
  std::span<const double> level_span(int k) const;
  std::span<double> data() { return coeffs_; }
  std::span<const double> data() const { return coeffs_; }

  TruncatedTensor& operator+=(const TruncatedTensor& o);
  TruncatedTensor& operator-=(const TruncatedTensor& o);
  TruncatedTensor& operator*=(double s);

 private:
  int dim_ = 0;
  int level_ = 0;
  std::vector<double> coeffs_;
};

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator*(double s, TruncatedTensor a);

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);
// Power series with zero scalar part required.
TruncatedTensor tensor_exp(const TruncatedTensor& x);
// Power series with unit scalar part required.
TruncatedTensor tensor_log(const TruncatedTensor& g);
// Drops levels above `level`, or pads with zero levels.
TruncatedTensor change_level(const TruncatedTensor& t, int level);
double level_norm(const TruncatedTensor& t, int k);
double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b);

class LieElement;

class GroupElement {
 public:
  GroupElement() = default;
  // Throws StructuralError unless the scalar part is 1 within kStructuralTol.
  explicit GroupElement(TruncatedTensor t);

  static GroupElement unit(int dim, int level);

  const TruncatedTensor& tensor() const { return t_; }
  int dim() const { return t_.dim(); }
  int level() const { return t_.level(); }
  double coeff(const Word& w) const { return t_.coeff(w); }
  std::span<const double> level_span(int k) const { return t_.level_span(k); }

 private:
  TruncatedTensor t_;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& g);
GroupElement exp_t(const LieElement& x);
LieElement log_g(const GroupElement& g);
GroupElement dilation(const GroupElement& g, double lambda);
GroupElement project(const GroupElement& g, int level);

// max_i |pi_i(log g)|^{1/i} with Euclidean norms on each tensor level.
double hom_norm(const GroupElement& g);
double cc_dist(const GroupElement& g, const GroupElement& h);

// Max over |u|+|v| <= N of |<g, u sh v> - <g,u><g,v>|.
double shuffle_residual(const TruncatedTensor& g);
bool is_group_like(const TruncatedTensor& g, double tol = kStructuralTol);

// All words w (counted with multiplicity) in the shuffle of u and v.
std::vector<Word> shuffle(const Word& u, const Word& v);

}  // namespace roughlift
