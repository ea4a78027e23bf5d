// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlift/errors.hpp"
#include "roughlift/lyndon.hpp"

namespace roughlift {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t level_offset(int dim, int k) {
  std::size_t off = 0;
  for (int i = 0; i < k; ++i) off += ipow(static_cast<std::size_t>(dim), i);
  return off;
}

std::size_t tensor_size(int dim, int level) { return level_offset(dim, level + 1); }

std::size_t word_index(int dim, const Word& w) {
  std::size_t idx = 0;
  for (int letter : w) {
    if (letter < 1 || letter > dim)
      throw StructuralError("letter " + std::to_string(letter) + " outside {1.." +
                            std::to_string(dim) + "}");
    idx = idx * static_cast<std::size_t>(dim) + static_cast<std::size_t>(letter - 1);
  }
  return idx;
}

Word word_from_index(int dim, int length, std::size_t index) {
  Word w(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(dim)) + 1;
    index /= static_cast<std::size_t>(dim);
  }
  return w;
}

TruncatedTensor::TruncatedTensor(int dim, int level) : dim_(dim), level_(level) {
  if (dim < 1) throw StructuralError("tensor dimension must be positive");
  if (level < 0) throw StructuralError("tensor level must be non-negative");
  coeffs_.assign(tensor_size(dim, level), 0.0);
}

TruncatedTensor TruncatedTensor::unit(int dim, int level) {
  TruncatedTensor t(dim, level);
  t.coeffs_[0] = 1.0;
  return t;
}

TruncatedTensor TruncatedTensor::from_vector(int level, std::span<const double> v) {
  TruncatedTensor t(static_cast<int>(v.size()), level);
  if (level >= 1) std::copy(v.begin(), v.end(), t.coeffs_.begin() + 1);
  return t;
}

double TruncatedTensor::coeff(const Word& w) const {
  if (static_cast<int>(w.size()) > level_) return 0.0;
  return coeffs_[level_offset(dim_, static_cast<int>(w.size())) + word_index(dim_, w)];
}

void TruncatedTensor::set(const Word& w, double value) {
  if (static_cast<int>(w.size()) > level_)
    throw StructuralError("word longer than truncation level");
  coeffs_[level_offset(dim_, static_cast<int>(w.size())) + word_index(dim_, w)] = value;
}

std::span<double> TruncatedTensor::level_span(int k) {
  return {coeffs_.data() + level_offset(dim_, k), ipow(static_cast<std::size_t>(dim_), k)};
}

std::span<const double> TruncatedTensor::level_span(int k) const {
  return {coeffs_.data() + level_offset(dim_, k), ipow(static_cast<std::size_t>(dim_), k)};
}

namespace {
void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b) {
  if (a.dim() != b.dim() || a.level() != b.level())
    throw StructuralError("tensor shape mismatch: (d=" + std::to_string(a.dim()) +
                          ",N=" + std::to_string(a.level()) + ") vs (d=" +
                          std::to_string(b.dim()) + ",N=" + std::to_string(b.level()) + ")");
}
}  // namespace

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b) { return a += b; }
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b) { return a -= b; }
TruncatedTensor operator*(double s, TruncatedTensor a) { return a *= s; }

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  require_same_shape(a, b);
  const int d = a.dim();
  const int N = a.level();
  TruncatedTensor out(d, N);
  for (int i = 0; i <= N; ++i) {
    auto ai = a.level_span(i);
    for (int j = 0; i + j <= N; ++j) {
      auto bj = b.level_span(j);
      auto oij = out.level_span(i + j);
      const std::size_t nb = bj.size();
      for (std::size_t u = 0; u < ai.size(); ++u) {
        const double au = ai[u];
        if (au == 0.0) continue;
        double* dst = oij.data() + u * nb;
        for (std::size_t v = 0; v < nb; ++v) dst[v] += au * bj[v];
      }
    }
  }
  return out;
}

TruncatedTensor tensor_exp(const TruncatedTensor& x) {
  if (x.scalar() != 0.0) throw StructuralError("exp argument must have zero scalar part");
  const int N = x.level();
  TruncatedTensor result = TruncatedTensor::unit(x.dim(), N);
  TruncatedTensor power = TruncatedTensor::unit(x.dim(), N);
  for (int k = 1; k <= N; ++k) {
    power = tensor_mul(power, x);
    power *= 1.0 / k;
    result += power;
  }
  return result;
}

TruncatedTensor tensor_log(const TruncatedTensor& g) {
  if (std::abs(g.scalar() - 1.0) > kStructuralTol)
    throw StructuralError("log argument must have unit scalar part");
  const int N = g.level();
  TruncatedTensor x = g;
  x.data()[0] = 0.0;
  TruncatedTensor result(g.dim(), N);
  TruncatedTensor power = TruncatedTensor::unit(g.dim(), N);
  for (int k = 1; k <= N; ++k) {
    power = tensor_mul(power, x);
    result += ((k % 2 == 1) ? 1.0 : -1.0) / k * power;
  }
  return result;
}

TruncatedTensor change_level(const TruncatedTensor& t, int level) {
  TruncatedTensor out(t.dim(), level);
  const std::size_t n = std::min(out.data().size(), t.data().size());
  std::copy_n(t.data().begin(), n, out.data().begin());
  return out;
}

double level_norm(const TruncatedTensor& t, int k) {
  double s = 0.0;
  for (double c : t.level_span(k)) s += c * c;
  return std::sqrt(s);
}

double max_abs_diff(const TruncatedTensor& a, const TruncatedTensor& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

GroupElement::GroupElement(TruncatedTensor t) : t_(std::move(t)) {
  if (t_.empty()) throw StructuralError("empty group element");
  if (std::abs(t_.scalar() - 1.0) > kStructuralTol)
    throw StructuralError("group element needs unit scalar part");
  t_.data()[0] = 1.0;
}

GroupElement GroupElement::unit(int dim, int level) {
  return GroupElement(TruncatedTensor::unit(dim, level));
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(tensor_mul(a.tensor(), b.tensor()));
}

GroupElement group_inverse(const GroupElement& g) {
  // Neumann series: (1 + x)^{-1} = sum_k (-x)^k, terminating at level N.
  TruncatedTensor x = g.tensor();
  x.data()[0] = 0.0;
  x *= -1.0;
  TruncatedTensor result = TruncatedTensor::unit(g.dim(), g.level());
  TruncatedTensor power = result;
  for (int k = 1; k <= g.level(); ++k) {
    power = tensor_mul(power, x);
    result += power;
  }
  return GroupElement(std::move(result));
}

GroupElement exp_t(const LieElement& x) { return GroupElement(tensor_exp(x.to_tensor())); }

LieElement log_g(const GroupElement& g) { return LieElement::from_tensor(tensor_log(g.tensor())); }

GroupElement dilation(const GroupElement& g, double lambda) {
  TruncatedTensor t = g.tensor();
  double scale = 1.0;
  for (int k = 1; k <= t.level(); ++k) {
    scale *= lambda;
    for (double& c : t.level_span(k)) c *= scale;
  }
  return GroupElement(std::move(t));
}

GroupElement project(const GroupElement& g, int level) {
  if (level > g.level()) throw StructuralError("projection cannot raise the level");
  return GroupElement(change_level(g.tensor(), level));
}

double hom_norm(const GroupElement& g) {
  const TruncatedTensor l = tensor_log(g.tensor());
  double m = 0.0;
  for (int k = 1; k <= l.level(); ++k) m = std::max(m, std::pow(level_norm(l, k), 1.0 / k));
  return m;
}

double cc_dist(const GroupElement& g, const GroupElement& h) {
  if (g.dim() != h.dim() || g.level() != h.level())
    throw StructuralError("cc_dist: shape mismatch");
  return hom_norm(group_inverse(g) * h);
}

std::vector<Word> shuffle(const Word& u, const Word& v) {
  if (u.empty()) return {v};
  if (v.empty()) return {u};
  std::vector<Word> out;
  Word u_head(u.begin(), u.end() - 1);
  Word v_head(v.begin(), v.end() - 1);
  for (Word w : shuffle(u_head, v)) {
    w.push_back(u.back());
    out.push_back(std::move(w));
  }
  for (Word w : shuffle(u, v_head)) {
    w.push_back(v.back());
    out.push_back(std::move(w));
  }
  return out;
}

double shuffle_residual(const TruncatedTensor& g) {
  const int d = g.dim();
  const int N = g.level();
  double worst = std::abs(g.scalar() - 1.0);
  for (int lu = 1; lu < N; ++lu) {
    for (int lv = lu; lu + lv <= N; ++lv) {
      const std::size_t nu = ipow(static_cast<std::size_t>(d), lu);
      const std::size_t nv = ipow(static_cast<std::size_t>(d), lv);
      for (std::size_t iu = 0; iu < nu; ++iu) {
        const Word u = word_from_index(d, lu, iu);
        for (std::size_t iv = 0; iv < nv; ++iv) {
          const Word v = word_from_index(d, lv, iv);
          double lhs = 0.0;
          for (const Word& w : shuffle(u, v)) lhs += g.coeff(w);
          worst = std::max(worst, std::abs(lhs - g.coeff(u) * g.coeff(v)));
        }
      }
    }
  }
  return worst;
}

bool is_group_like(const TruncatedTensor& g, double tol) { return shuffle_residual(g) <= tol; }

}  // namespace roughlift
