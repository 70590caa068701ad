#pragma once
// Slow reference implementations used only to cross-check the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "chs/chs.hpp"

namespace oracle {

using chs::Int;

// n! / (k! (n-k)!) by explicit factorials.
inline Int binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int num = 1, den = 1;
  for (long i = 1; i <= k; ++i) {
    num *= n - k + i;
    den *= i;
  }
  return num / den;
}

// Newton coefficients as iterated forward differences at 0.
inline std::vector<Int> forward_differences(std::vector<Int> z) {
  std::vector<Int> a;
  while (!z.empty()) {
    a.push_back(z[0]);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) z[i] = z[i + 1] - z[i];
    z.pop_back();
  }
  return a;
}

// Evaluate sum_j a_j C(x, j) directly.
inline Int newton_eval(const std::vector<Int>& a, long x) {
  Int s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * binom(x, static_cast<long>(j));
  return s;
}

// Determinant by permutation expansion.
inline Int leibniz(const std::vector<std::vector<Int>>& m) {
  std::size_t d = m.size();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    Int term = 1;
    for (std::size_t i = 0; i < d; ++i) term *= m[i][perm[i]];
    int inv = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) inv += perm[i] > perm[j];
    total += inv % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Distance-1/2 tree-code property between two codeword sequences with split s.
template <class Seq>
bool tree_distance_ok(const Seq& x, const Seq& y, std::size_t s) {
  for (std::size_t l = 0; s + l < x.size(); ++l) {
    std::size_t d = 0;
    for (std::size_t i = s; i <= s + l; ++i) d += !(x[i] == y[i]);
    if (2 * d < l + 1) return false;
  }
  return true;
}

// Integer polynomials (lowest degree first) for the q-binomial ratio definition.
using Poly = std::vector<Int>;

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(r);
}

// Exact division by a polynomial with unit leading coefficient.
inline Poly div_exact(Poly a, const Poly& b) {
  a = trim(a);
  if (a.empty()) return {};
  std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + db] / b.back();
    for (std::size_t j = 0; j <= db; ++j) a[k + j] -= q[k] * b[j];
  }
  if (!trim(a).empty()) throw std::runtime_error("oracle::div_exact: remainder");
  return trim(q);
}

// prod_{i<s} (1 - q^{r-i}) / (1 - q^{i+1})
inline Poly gaussian_ratio(long r, long s) {
  if (s < 0 || s > r) return {};
  Poly num{1}, den{1};
  for (long i = 0; i < s; ++i) {
    Poly t(static_cast<std::size_t>(r - i) + 1, 0), u(static_cast<std::size_t>(i + 1) + 1, 0);
    t[0] = 1;
    t.back() = -1;
    u[0] = 1;
    u.back() = -1;
    num = mul(num, t);
    den = mul(den, u);
  }
  return div_exact(num, den);
}

// Closed-form decoder parameters recomputed in plain double arithmetic.
struct ClosedForm {
  long alpha;
  long epsilon;
  double r;
  double eps_real;
};

inline ClosedForm closed_form(double n, double c) {
  double s = std::sqrt(c + 1);
  ClosedForm f;
  f.alpha = static_cast<long>(std::floor((2 + 2 * s) * std::sqrt(n * std::log(n))));
  f.eps_real = std::sqrt(n) / ((8 * c + 16 * s + 17) * std::sqrt(std::log(n))) - 2;
  f.epsilon = static_cast<long>(std::floor(f.eps_real));
  f.r = std::sqrt((c + 1) * std::log(n) / n);
  return f;
}

// Dense check of the locator witness against the full n-constraint system (offset 0).
inline bool witness_solves_full_system(const chs::decode::LocatorWitness& w, const std::vector<Int>& y,
                                       const std::vector<std::size_t>& H, std::size_t beta, const Int& p) {
  std::size_t m = y.size();
  std::vector<char> support(m, 0);
  for (std::size_t j = 0; j < beta && j < m; ++j) support[j] = 1;
  for (auto j : w.J) support[j] = 1;
  bool nonzero = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (!support[j] && chs::mod(w.b[j], p) != 0) return false;
    nonzero = nonzero || chs::mod(w.b[j], p) != 0;
  }
  auto cval = [&](std::size_t x) {
    Int s = 0;
    for (std::size_t t = 0; t < w.c.size(); ++t) s += w.c[t] * binom(static_cast<long>(x), static_cast<long>(t));
    return chs::mod(s, p);
  };
  for (const auto& ck : w.c) nonzero = nonzero || chs::mod(ck, p) != 0;
  if (!nonzero) return false;
  for (std::size_t i = 0; i < m; ++i) {
    bool in_h = std::find(H.begin(), H.end(), i) != H.end();
    if (in_h) {
      if (cval(i) != 0) return false;
    } else {
      Int bi = 0;
      for (std::size_t j = 0; j <= i; ++j) bi += w.b[j] * binom(static_cast<long>(i), static_cast<long>(j));
      if (chs::mod(bi + cval(i) * y[i], p) != 0) return false;
    }
  }
  return true;
}

}  // namespace oracle
