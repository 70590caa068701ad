#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "../bigint.hpp"
#include "../core_transform.hpp"
#include "qpoly.hpp"

namespace chs::variants {

inline bool is_small_prime(std::size_t v) {
  if (v < 2) return false;
  for (std::size_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline std::size_t smallest_prime_above(std::size_t v) {
  std::size_t c = v + 1;
  while (!is_small_prime(c)) ++c;
  return c;
}

// Element of Z[x]/Phi_l in the power basis 1, x, ..., x^(l-2).
class CyclotomicElement {
 public:
  CyclotomicElement() = default;
  explicit CyclotomicElement(std::size_t ell, Int c = 0) : ell_(ell), c_(ell - 1, 0) {
    if (!is_small_prime(ell)) throw PreconditionViolation("cyclotomic conductor must be prime");
    c_[0] = std::move(c);
  }
  CyclotomicElement(std::size_t ell, std::vector<Int> coeffs) : ell_(ell), c_(std::move(coeffs)) {
    if (!is_small_prime(ell)) throw PreconditionViolation("cyclotomic conductor must be prime");
    if (c_.size() != ell - 1) throw PreconditionViolation("cyclotomic element needs l-1 coefficients");
  }

  // zeta^k
  static CyclotomicElement zeta_power(std::size_t ell, std::size_t k) {
    std::vector<Int> wide(ell, 0);
    wide[k % ell] = 1;
    return from_wide(ell, std::move(wide));
  }

  std::size_t ell() const { return ell_; }
  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  CyclotomicElement& operator+=(const CyclotomicElement& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  CyclotomicElement& operator-=(const CyclotomicElement& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
  friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) { return a -= b; }
  friend CyclotomicElement operator*(CyclotomicElement a, const Int& s) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    std::size_t l = a.ell_;
    std::vector<Int> wide(l, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) wide[(i + j) % l] += a.c_[i] * b.c_[j];
    }
    return from_wide(l, std::move(wide));
  }

  // zeta^k * this: a rotation in Z[x]/(x^l - 1), then reduction.
  CyclotomicElement times_zeta(std::size_t k) const {
    std::vector<Int> wide(ell_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) wide[(i + k) % ell_] = c_[i];
    return from_wide(ell_, std::move(wide));
  }

  std::complex<double> to_complex() const {
    std::complex<double> acc = 0;
    const double tau = 2 * std::acos(-1.0);
    for (std::size_t k = 0; k < c_.size(); ++k)
      acc += c_[k].get_d() * std::polar(1.0, tau * static_cast<double>(k) / static_cast<double>(ell_));
    return acc;
  }

  bool operator==(const CyclotomicElement&) const = default;

 private:
  void check(const CyclotomicElement& o) const {
    if (ell_ != o.ell_) throw PreconditionViolation("cyclotomic conductors differ");
  }
  // x^(l-1) = -(1 + x + ... + x^(l-2)).
  static CyclotomicElement from_wide(std::size_t l, std::vector<Int> wide) {
    CyclotomicElement e;
    e.ell_ = l;
    e.c_.resize(l - 1);
    for (std::size_t k = 0; k + 1 < l; ++k) e.c_[k] = wide[k] - wide[l - 1];
    return e;
  }

  std::size_t ell_ = 0;
  std::vector<Int> c_;
};

// [r, s]_zeta for r < depth, by the recurrence.
inline std::vector<std::vector<CyclotomicElement>> cyclotomic_binomial_table(std::size_t depth, std::size_t ell) {
  std::vector<std::vector<CyclotomicElement>> t(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    t[r].resize(r + 1);
    t[r][0] = CyclotomicElement(ell, Int(1));
    for (std::size_t s = 1; s <= r; ++s) {
      CyclotomicElement v = t[r - 1][s - 1];
      if (s < r) v += t[r - 1][s].times_zeta(s);
      t[r][s] = std::move(v);
    }
  }
  return t;
}

// Evaluates an integer polynomial at zeta_l.
inline CyclotomicElement eval_at_zeta(const QPolynomial& f, std::size_t ell) {
  std::vector<Int> wide(ell, 0);
  for (std::size_t k = 0; k < f.coeffs().size(); ++k) wide[k % ell] += f.coeffs()[k];
  std::vector<Int> c(ell - 1);
  for (std::size_t k = 0; k + 1 < ell; ++k) c[k] = wide[k] - wide[ell - 1];
  return CyclotomicElement(ell, std::move(c));
}

inline std::size_t cyclotomic_conductor(std::size_t n) { return smallest_prime_above(n * n * n); }

}  // namespace chs::variants
