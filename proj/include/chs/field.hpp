#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace chs {

using Matrix = std::vector<std::vector<Int>>;

inline Int inv_mod(const Int& a, const Int& p) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()))
    throw InternalInvariant("inv_mod: element not invertible");
  return r;
}

inline Int mul_mod(const Int& a, const Int& b, const Int& p) { return mod(a * b, p); }

// Fraction-free integer determinant; row swaps on zero pivots.
inline Int det_bareiss(Matrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace detail {

// Row echelon form in place. Returns pivot column of each pivot row.
// Fraction-free over Z when `p` is null, otherwise ordinary elimination mod *p.
inline std::vector<std::size_t> echelon(Matrix& m, std::size_t cols, const Int* p) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size(), row = 0;
  Int prev = 1;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t r = row;
    while (r < rows && m[r][col] == 0) ++r;
    if (r == rows) continue;
    std::swap(m[r], m[row]);
    if (p) {
      Int inv = inv_mod(m[row][col], *p);
      for (std::size_t c = col; c < cols; ++c) m[row][c] = mul_mod(m[row][c], inv, *p);
      for (std::size_t i = row + 1; i < rows; ++i) {
        if (m[i][col] == 0) continue;
        Int f = m[i][col];
        for (std::size_t c = col; c < cols; ++c) m[i][c] = mod(m[i][c] - f * m[row][c], *p);
      }
    } else {
      for (std::size_t i = row + 1; i < rows; ++i) {
        for (std::size_t c = col + 1; c < cols; ++c) {
          m[i][c] = m[row][col] * m[i][c] - m[i][col] * m[row][c];
          mpz_divexact(m[i][c].get_mpz_t(), m[i][c].get_mpz_t(), prev.get_mpz_t());
        }
        m[i][col] = 0;
      }
      prev = m[row][col];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// log2 of the Hadamard bound of the row set, rounded up.
inline std::size_t hadamard_bits(const Matrix& m) {
  std::size_t bits = 0;
  for (const auto& row : m) {
    Int s = 0;
    for (const auto& x : row) s += x * x;
    bits += (mpz_sizeinbase(s.get_mpz_t(), 2) + 2) / 2;
  }
  return bits;
}

}  // namespace detail

// Kernel vector of M mod p attached to the first free column of the reduced
// echelon form: x_f = 1, all other free variables 0. Empty if M has full
// column rank. When every minor of M is smaller than p in magnitude, ranks over
// Q and F_p coincide and the elimination runs fraction-free over Z.
inline std::optional<std::vector<Int>> first_kernel_vector(Matrix m, const Int& p) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  bool over_z = detail::hadamard_bits(m) + 2 < mpz_sizeinbase(p.get_mpz_t(), 2);
  if (!over_z)
    for (auto& row : m)
      for (auto& x : row) x = mod(x, p);
  auto pivots = detail::echelon(m, cols, over_z ? nullptr : &p);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::size_t f = 0;
  while (f < cols && is_pivot[f]) ++f;
  if (f == cols) return std::nullopt;
  std::vector<Int> x(cols, 0);
  x[f] = 1;
  for (std::size_t i = pivots.size(); i-- > 0;) {
    std::size_t pc = pivots[i];
    Int acc = 0;
    for (std::size_t c = pc + 1; c < cols; ++c)
      if (x[c] != 0) acc += m[i][c] * x[c];
    x[pc] = mod(-acc * inv_mod(mod(m[i][pc], p), p), p);
  }
  return x;
}

// Solves A x = b mod p for square nonsingular A.
inline std::vector<Int> solve_mod(Matrix a, std::vector<Int> b, const Int& p) {
  std::size_t n = a.size();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i) {
    a[i].push_back(b[i]);
    for (auto& x : a[i]) x = mod(x, p);
  }
  auto pivots = detail::echelon(a, n + 1, &p);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InternalInvariant("solve_mod: singular system");
  std::vector<Int> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Int acc = a[i][n];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = mod(acc, p);
  }
  return x;
}

inline Matrix inverse_mod(const Matrix& a, const Int& p) {
  std::size_t n = a.size();
  Matrix inv(n, std::vector<Int>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Int> e(n, 0);
    e[c] = 1;
    auto col = solve_mod(a, e, p);
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = col[r];
  }
  return inv;
}

inline Matrix mat_mul_mod(const Matrix& a, const Matrix& b, const Int& p) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Int acc = 0;
      for (std::size_t t = 0; t < k; ++t) acc += a[i][t] * b[t][j];
      out[i][j] = mod(acc, p);
    }
  return out;
}

}  // namespace chs
