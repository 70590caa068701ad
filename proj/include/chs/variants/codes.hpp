#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "../core_transform.hpp"
#include "../lgv.hpp"
#include "cyclotomic.hpp"
#include "hpcomplex.hpp"
#include "qpoly.hpp"

namespace chs::variants {

template <class T>
struct Symbol {
  Int z;
  T b;
  bool operator==(const Symbol&) const = default;
};

using CyclotomicSymbol = Symbol<CyclotomicElement>;
using HPSymbol = Symbol<HPComplex>;

// Bits demanded of a transcendental code of depth n: c_prec * n^exponent, at least 64.
inline unsigned min_precision(std::size_t n, unsigned exponent, double c_prec) {
  long double want = std::ceil(static_cast<long double>(c_prec) * std::pow(static_cast<long double>(n), exponent));
  if (want > 4e9L) want = 4e9L;
  return std::max(64u, static_cast<unsigned>(want));
}

inline void require_precision(std::size_t n, unsigned P, unsigned exponent, double c_prec) {
  unsigned need = min_precision(n, exponent, c_prec);
  if (P < need)
    throw PrecisionUnderflow("precision " + std::to_string(P) + " below required " + std::to_string(need) + " bits");
}

inline QPolynomial scale(const QPolynomial& p, const Int& k) { return p * QPolynomial(k); }
inline CyclotomicElement scale(const CyclotomicElement& e, const Int& k) { return e * k; }
inline HPComplex scale(const HPComplex& h, const Int& k) { return h * k; }

namespace detail {

// b_j = sum_i z_i (-1)^{j-i} q^{C(j-i,2)} [j,i]_q.
template <class R, class Table, class QPow>
std::vector<R> carlitz(const EvalVector& z, const Table& qbin, QPow qpow, const R& zero) {
  std::size_t n = z.size();
  std::vector<R> b(n, zero);
  for (std::size_t j = 0; j < n; ++j) {
    R acc = zero;
    for (std::size_t i = 0; i <= j; ++i) {
      if (z[i] == 0) continue;
      std::size_t m = j - i;
      R term = qpow(m ? m * (m - 1) / 2 : 0) * qbin[j][i];
      term = scale(term, z[i]);
      if (m % 2) acc -= term;
      else acc += term;
    }
    b[j] = std::move(acc);
  }
  return b;
}

template <class R, class Table>
std::vector<R> forward(const std::vector<R>& b, const Table& qbin, const R& zero) {
  std::vector<R> z(b.size(), zero);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) z[i] += b[j] * qbin[i][j];
  return z;
}

inline std::vector<HPComplex> hp_qpowers(const AlgebraicReal& th, std::size_t count, unsigned P) {
  std::vector<Int> ks(count);
  for (std::size_t k = 0; k < count; ++k) ks[k] = static_cast<unsigned long>(k);
  return circle_points(th, ks, P);
}

inline std::vector<std::vector<HPComplex>> hp_binomial_table(std::size_t depth, const std::vector<HPComplex>& qpow,
                                                             unsigned P) {
  std::vector<std::vector<HPComplex>> t(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    t[r].assign(r + 1, HPComplex::zero(P));
    t[r][0] = HPComplex::one(P);
    for (std::size_t s = 1; s <= r; ++s) {
      t[r][s] = t[r - 1][s - 1];
      if (s < r) t[r][s] += qpow[s] * t[r - 1][s];
    }
  }
  return t;
}

}  // namespace detail

inline std::vector<QPolynomial> carlitz_symbolic(const EvalVector& z) {
  auto table = q_binomial_table(z.size());
  return detail::carlitz<QPolynomial>(
      z, table, [](std::size_t k) { return QPolynomial::monomial(k); }, QPolynomial());
}

inline std::vector<QPolynomial> forward_symbolic(const std::vector<QPolynomial>& b) {
  return detail::forward(b, q_binomial_table(b.size()), QPolynomial());
}

inline void require_conductor(std::size_t n, std::size_t ell) {
  if (!is_small_prime(ell)) throw PreconditionViolation("conductor " + std::to_string(ell) + " is not prime");
  if (ell <= n * n * n) throw PreconditionViolation("conductor must exceed n^3");
}

inline std::vector<CyclotomicElement> carlitz_cyclotomic(const EvalVector& z, std::size_t ell) {
  require_conductor(z.size(), ell);
  auto table = cyclotomic_binomial_table(z.size(), ell);
  return detail::carlitz<CyclotomicElement>(
      z, table, [&](std::size_t k) { return CyclotomicElement::zeta_power(ell, k); }, CyclotomicElement(ell));
}

inline std::vector<CyclotomicElement> forward_cyclotomic(const std::vector<CyclotomicElement>& b, std::size_t ell) {
  return detail::forward(b, cyclotomic_binomial_table(b.size(), ell), CyclotomicElement(ell));
}

// No precision floor here; the encoders apply the policy.
inline std::vector<HPComplex> carlitz_hp(const EvalVector& z, const AlgebraicReal& th, unsigned P) {
  std::size_t n = z.size();
  std::size_t maxk = n ? (n - 1) * (n >= 2 ? n - 2 : 0) / 2 : 0;
  auto pts = detail::hp_qpowers(th, std::max(n, maxk + 1), P);
  auto table = detail::hp_binomial_table(n, pts, P);
  return detail::carlitz<HPComplex>(
      z, table, [&](std::size_t k) { return pts[k]; }, HPComplex::zero(P));
}

inline std::vector<HPComplex> forward_sunflower(const std::vector<HPComplex>& b, const AlgebraicReal& th, unsigned P) {
  auto pts = detail::hp_qpowers(th, std::max<std::size_t>(b.size(), 1), P);
  return detail::forward(b, detail::hp_binomial_table(b.size(), pts, P), HPComplex::zero(P));
}

inline std::vector<CyclotomicSymbol> encode_cyclotomic(const EvalVector& z, std::size_t ell) {
  auto b = carlitz_cyclotomic(z, ell);
  std::vector<CyclotomicSymbol> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {z[i], std::move(b[i])};
  return out;
}

inline std::vector<HPSymbol> encode_sunflower(const EvalVector& z, const AlgebraicReal& th, unsigned P,
                                              double c_prec = 1.0) {
  require_precision(z.size(), P, 8, c_prec);
  auto f = carlitz_hp(z, th, P);
  std::vector<HPSymbol> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {z[i], std::move(f[i])};
  return out;
}

// {r, s}_theta: W[r][s] = W[r-1][s-1] + x_s W[r-1][s], x_s = e^{2 pi i s^2 theta}.
inline std::vector<std::vector<HPComplex>> weyl_table(std::size_t depth, const AlgebraicReal& th, unsigned P) {
  std::vector<Int> ks(depth);
  for (std::size_t s = 0; s < depth; ++s) ks[s] = Int(static_cast<unsigned long>(s)) * static_cast<unsigned long>(s);
  auto x = circle_points(th, ks, P);
  return detail::hp_binomial_table(depth, x, P);
}

// W is unit lower triangular: forward substitution, no division.
inline std::vector<HPComplex> weyl_coeffs(const EvalVector& z, const AlgebraicReal& th, unsigned P) {
  auto W = weyl_table(z.size(), th, P);
  std::vector<HPComplex> g(z.size(), HPComplex::zero(P));
  for (std::size_t j = 0; j < z.size(); ++j) {
    HPComplex acc = HPComplex::from_int(z[j], P);
    for (std::size_t s = 0; s < j; ++s) acc -= W[j][s] * g[s];
    g[j] = std::move(acc);
  }
  return g;
}

inline std::vector<HPComplex> forward_weyl(const std::vector<HPComplex>& g, const AlgebraicReal& th, unsigned P) {
  return detail::forward(g, weyl_table(g.size(), th, P), HPComplex::zero(P));
}

inline std::vector<HPSymbol> encode_weyl_squares(const EvalVector& z, const AlgebraicReal& th, unsigned P,
                                                 double c_prec = 1.0) {
  require_precision(z.size(), P, 11, c_prec);
  auto g = weyl_coeffs(z, th, P);
  std::vector<HPSymbol> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {z[i], std::move(g[i])};
  return out;
}

enum class HPKind { SUNFLOWER, WEYL };

struct MarginReport {
  double abs_det = 0;
  double log2_budget = 0;
  bool ok = false;
};

inline HPComplex hp_det(const std::vector<std::vector<HPComplex>>& m, unsigned P) {
  std::size_t d = m.size();
  if (d > 5) throw PreconditionViolation("hp_det: Leibniz expansion limited to d <= 5");
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  HPComplex total = HPComplex::zero(P);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    HPComplex term = HPComplex::one(P);
    for (std::size_t i = 0; i < d; ++i) term = term * m[i][perm[i]];
    if (sign > 0) total += term;
    else total -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// |det| of the path matrix at theta against an a-priori rounding budget.
// Entries are bounded by 2^r; each recurrence level at most doubles the
// inherited error and adds 2^(r+2-P).
inline MarginReport determinant_margin(HPKind kind, const lgv::IndexPairSelection& sel, const AlgebraicReal& th,
                                       unsigned P) {
  sel.validate();
  std::size_t d = sel.size();
  std::size_t top = d ? sel.rows.back() : 0;
  std::vector<std::vector<HPComplex>> table;
  if (kind == HPKind::SUNFLOWER) table = detail::hp_binomial_table(top + 1, detail::hp_qpowers(th, top + 1, P), P);
  else table = weyl_table(top + 1, th, P);
  std::vector<std::vector<HPComplex>> m(d, std::vector<HPComplex>(d, HPComplex::zero(P)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (sel.cols[j] <= sel.rows[i]) m[i][j] = table[sel.rows[i]][sel.cols[j]];
  MarginReport rep;
  rep.abs_det = std::abs(hp_det(m, P).to_complex());
  double r = static_cast<double>(top), dd = static_cast<double>(d);
  double log2_entry_err = std::log2(r + 1) + r + 2 - P;
  double log2_fact = std::lgamma(dd + 1) / std::log(2.0);
  double log2_prod = std::log2(std::max(dd, 1.0)) + (dd - 1) * r;
  double log2_round = r + 2 - static_cast<double>(P);
  rep.log2_budget = log2_fact + log2_prod + std::log2(std::exp2(log2_entry_err) + std::exp2(log2_round)) + 1;
  rep.ok = rep.abs_det > 0 && std::log2(rep.abs_det) > rep.log2_budget;
  return rep;
}

struct GapReport {
  long double min_gap_sorted = 0;
  long double min_gap_pairwise = 0;
  std::size_t distinct_gaps = 0;
};

// Points frac(i theta), i < n, on the unit circle.
inline GapReport circle_gaps(const AlgebraicReal& th, std::size_t n) {
  auto f = circle_fractions(th, n);
  GapReport rep;
  auto sorted = f;
  std::sort(sorted.begin(), sorted.end());
  std::vector<long double> gaps;
  for (std::size_t i = 0; i < n; ++i) {
    long double g = i + 1 < n ? sorted[i + 1] - sorted[i] : 1 + sorted[0] - sorted[i];
    gaps.push_back(g);
  }
  rep.min_gap_sorted = n >= 2 ? *std::min_element(gaps.begin(), gaps.end()) : 1;
  rep.min_gap_pairwise = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long double d = std::fabs(f[i] - f[j]);
      rep.min_gap_pairwise = std::min(rep.min_gap_pairwise, std::min(d, 1 - d));
    }
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t i = 0; i < gaps.size(); ++i)
    if (i == 0 || gaps[i] - gaps[i - 1] > 1e-12L) ++rep.distinct_gaps;
  return rep;
}

struct DistanceCounterexample {
  EvalVector x, y;
  std::size_t split = 0, ell = 0, distance = 0;
};

// Exhaustive check of d_H(enc(x)[s..s+l], enc(y)[s..s+l]) >= (l+1)/2 over all
// input pairs from alphabet^n, s the split. Returns the first violation.
template <class Encoder>
std::optional<DistanceCounterexample> check_distance_exhaustive(Encoder enc, std::size_t n,
                                                                const std::vector<Int>& alphabet,
                                                                std::size_t budget = 100000) {
  if (alphabet.empty()) throw PreconditionViolation("alphabet must be nonempty");
  long double count = std::pow(static_cast<long double>(alphabet.size()), static_cast<long double>(n));
  if (count * (count - 1) / 2 > static_cast<long double>(budget))
    throw BudgetExceeded("distance check needs " + std::to_string(static_cast<double>(count * (count - 1) / 2)) +
                         " pairs, budget " + std::to_string(budget));
  std::size_t N = static_cast<std::size_t>(count);
  std::vector<EvalVector> inputs(N, EvalVector(n));
  for (std::size_t idx = 0; idx < N; ++idx) {
    std::size_t v = idx;
    for (std::size_t i = 0; i < n; ++i) {
      inputs[idx][i] = alphabet[v % alphabet.size()];
      v /= alphabet.size();
    }
  }
  std::vector<decltype(enc(inputs[0]))> codes;
  codes.reserve(N);
  for (const auto& x : inputs) codes.push_back(enc(x));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b) {
      std::size_t s = 0;
      while (inputs[a][s] == inputs[b][s]) ++s;
      std::size_t d = 0;
      for (std::size_t l = 0; s + l < n; ++l) {
        d += !(codes[a][s + l] == codes[b][s + l]);
        if (2 * d < l + 1) return DistanceCounterexample{inputs[a], inputs[b], s, l, d};
      }
    }
  return std::nullopt;
}

}  // namespace chs::variants
