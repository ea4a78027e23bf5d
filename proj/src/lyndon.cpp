// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/lyndon.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "roughlift/errors.hpp"

namespace roughlift {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  // Strictly smaller than every proper rotation.
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    if (!(w < rot)) return false;
  }
  return true;
}

std::vector<Word> lyndon_words(int dim, int max_length) {
  // Duval's generator, emits in lexicographic order.
  std::vector<Word> out;
  if (max_length < 1) return out;
  Word w{1};
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < static_cast<std::size_t>(max_length)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == dim) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

namespace {

TruncatedTensor bracket_tensor(const TruncatedTensor& a, const TruncatedTensor& b) {
  return tensor_mul(a, b) - tensor_mul(b, a);
}

}  // namespace

LyndonBasis::LyndonBasis(int dim, int level) : dim_(dim), level_(level) {
  if (dim < 1 || level < 1) throw StructuralError("Lyndon basis needs d >= 1, N >= 1");
  std::vector<Word> all = lyndon_words(dim, level);
  // Grade by length, lexicographic within a level.
  for (int k = 1; k <= level; ++k)
    for (const Word& w : all)
      if (static_cast<int>(w.size()) == k) words_.push_back(w);

  std::map<Word, std::size_t> pos;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word& w = words_[i];
    TruncatedTensor e(dim, level);
    if (w.size() == 1) {
      e.set(w, 1.0);
    } else {
      // Standard factorization: v is the longest proper Lyndon suffix.
      std::size_t split = 1;
      for (std::size_t s = 1; s < w.size(); ++s) {
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
        if (is_lyndon(suffix)) {
          split = s;
          break;
        }
      }
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split));
      Word v(w.begin() + static_cast<std::ptrdiff_t>(split), w.end());
      e = bracket_tensor(expansions_[pos.at(u)], expansions_[pos.at(v)]);
    }
    pos[w] = i;
    expansions_.push_back(std::move(e));
  }
}

const LyndonBasis& LyndonBasis::get(int dim, int level) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<LyndonBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, level}];
  if (!slot) slot = std::make_unique<LyndonBasis>(dim, level);
  return *slot;
}

TruncatedTensor LyndonBasis::expand(std::span<const double> coords) const {
  if (coords.size() != words_.size()) throw StructuralError("Lyndon coordinate count mismatch");
  TruncatedTensor t(dim_, level_);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0.0) continue;
    auto src = expansions_[i].data();
    auto dst = t.data();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] += coords[i] * src[k];
  }
  return t;
}

std::vector<double> LyndonBasis::coordinates(const TruncatedTensor& lie, double tol) const {
  if (lie.dim() != dim_ || lie.level() != level_) throw StructuralError("Lyndon shape mismatch");
  // P_w = w + (lexicographically larger words of the same length), so a
  // sweep in increasing order reads each coordinate off the residual.
  TruncatedTensor residual = lie;
  std::vector<double> c(words_.size(), 0.0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    c[i] = residual.coeff(words_[i]);
    if (c[i] != 0.0) residual -= c[i] * expansions_[i];
  }
  double worst = 0.0;
  for (double r : residual.data()) worst = std::max(worst, std::abs(r));
  if (worst > tol) throw StructuralError("tensor is not a Lie polynomial (residual " +
                                         std::to_string(worst) + ")");
  return c;
}

LieElement::LieElement(int dim, int level)
    : dim_(dim), level_(level), coords_(LyndonBasis::get(dim, level).size(), 0.0) {}

LieElement::LieElement(int dim, int level, std::vector<double> coords)
    : dim_(dim), level_(level), coords_(std::move(coords)) {
  if (coords_.size() != LyndonBasis::get(dim, level).size())
    throw StructuralError("Lyndon coordinate count mismatch");
}

LieElement LieElement::from_tensor(const TruncatedTensor& t, double tol) {
  if (t.scalar() != 0.0) throw StructuralError("Lie element must have zero scalar part");
  return LieElement(t.dim(), t.level(), LyndonBasis::get(t.dim(), t.level()).coordinates(t, tol));
}

LieElement LieElement::letter(int dim, int level, int i) {
  LieElement x(dim, level);
  if (i < 1 || i > dim) throw StructuralError("letter out of range");
  x.coords_[static_cast<std::size_t>(i - 1)] = 1.0;  // level-1 words come first
  return x;
}

LieElement LieElement::from_vector(int level, std::span<const double> v) {
  LieElement x(static_cast<int>(v.size()), level);
  for (std::size_t i = 0; i < v.size(); ++i) x.coords_[i] = v[i];
  return x;
}

TruncatedTensor LieElement::to_tensor() const { return LyndonBasis::get(dim_, level_).expand(coords_); }

LieElement& LieElement::operator+=(const LieElement& o) {
  if (o.dim_ != dim_ || o.level_ != level_) throw StructuralError("Lie shape mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LieElement& LieElement::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
LieElement operator-(LieElement a, const LieElement& b) { return a += (-1.0) * b; }
LieElement operator*(double s, LieElement a) { return a *= s; }

LieElement bracket(const LieElement& a, const LieElement& b) {
  return LieElement::from_tensor(bracket_tensor(a.to_tensor(), b.to_tensor()));
}

}  // namespace roughlift
