// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "roughlift/algebra.hpp"

namespace roughlift {

// Lyndon words up to length N in lexicographic order, each with the tensor
// expansion of its standard bracketing.
class LyndonBasis {
 public:
  // Cached per (dim, level); the returned reference stays valid.
  static const LyndonBasis& get(int dim, int level);

  int dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  const TruncatedTensor& expansion(std::size_t i) const { return expansions_[i]; }

  TruncatedTensor expand(std::span<const double> coords) const;
  // Throws StructuralError if `lie` is not a Lie polynomial within tol.
  std::vector<double> coordinates(const TruncatedTensor& lie, double tol = 1e-9) const;

  LyndonBasis(int dim, int level);

 private:
  int dim_;
  int level_;
  std::vector<Word> words_;
  std::vector<TruncatedTensor> expansions_;
};

std::vector<Word> lyndon_words(int dim, int max_length);
bool is_lyndon(const Word& w);

class LieElement {
 public:
  LieElement() = default;
  LieElement(int dim, int level);
  LieElement(int dim, int level, std::vector<double> coords);

  static LieElement from_tensor(const TruncatedTensor& t, double tol = 1e-9);
  static LieElement letter(int dim, int level, int i);
  static LieElement from_vector(int level, std::span<const double> v);

  int dim() const { return dim_; }
  int level() const { return level_; }
  const std::vector<double>& coords() const { return coords_; }
  TruncatedTensor to_tensor() const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator*=(double s);

 private:
  int dim_ = 0;
  int level_ = 0;
  std::vector<double> coords_;
};

LieElement operator+(LieElement a, const LieElement& b);
LieElement operator-(LieElement a, const LieElement& b);
LieElement operator*(double s, LieElement a);
LieElement bracket(const LieElement& a, const LieElement& b);

}  // namespace roughlift
