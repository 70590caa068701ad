#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "prime.hpp"

namespace chs {

// Evaluation-basis coordinates z_0..z_{n-1} of a message.
using EvalVector = std::vector<Int>;
// Newton-basis coordinates a_0..a_{n-1}.
using NewtonVector = std::vector<Int>;

struct SymbolPair {
  Int z, a;
  bool operator==(const SymbolPair&) const = default;
};
using CodewordPairSeq = std::vector<SymbolPair>;

inline Int binomial(std::size_t i, std::size_t j) {
  if (j > i) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), i, j);
  return r;
}

// Rows 0..depth-1 of Pascal's triangle.
class PascalTable {
 public:
  explicit PascalTable(std::size_t depth = 0) { extend(depth); }

  void extend(std::size_t depth) {
    while (rows_.size() < depth) {
      std::size_t i = rows_.size();
      std::vector<Int> row(i + 1);
      row[0] = row[i] = 1;
      for (std::size_t j = 1; j < i; ++j) row[j] = rows_[i - 1][j - 1] + rows_[i - 1][j];
      rows_.push_back(std::move(row));
    }
  }

  std::size_t depth() const { return rows_.size(); }

  const Int& operator()(std::size_t i, std::size_t j) const {
    static const Int zero = 0;
    if (j > i) return zero;
    if (i >= rows_.size()) throw PreconditionViolation("PascalTable: row beyond depth");
    return rows_[i][j];
  }

 private:
  std::vector<std::vector<Int>> rows_;
};

inline NewtonVector eval_to_newton(const EvalVector& z, const PascalTable& C) {
  std::size_t n = z.size();
  NewtonVector a(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int acc = 0;
    for (std::size_t i = 0; i <= j; ++i) {
      if ((j - i) % 2) acc -= C(j, i) * z[i];
      else acc += C(j, i) * z[i];
    }
    a[j] = acc;
  }
  return a;
}

inline NewtonVector eval_to_newton(const EvalVector& z) { return eval_to_newton(z, PascalTable(z.size())); }

inline EvalVector newton_to_eval(const NewtonVector& a, const PascalTable& C) {
  std::size_t n = a.size();
  EvalVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j <= i; ++j) acc += C(i, j) * a[j];
    z[i] = acc;
  }
  return z;
}

inline EvalVector newton_to_eval(const NewtonVector& a) { return newton_to_eval(a, PascalTable(a.size())); }

inline CodewordPairSeq encode_tc(const EvalVector& z, const PascalTable& C) {
  NewtonVector a = eval_to_newton(z, C);
  CodewordPairSeq out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {z[i], a[i]};
  return out;
}

inline CodewordPairSeq encode_tc(const EvalVector& z) { return encode_tc(z, PascalTable(z.size())); }

inline std::size_t pair_hamming(const CodewordPairSeq& x, const CodewordPairSeq& y) {
  if (x.size() != y.size()) throw PreconditionViolation("pair_hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += !(x[i] == y[i]);
  return d;
}

template <class V>
std::size_t sparsity(const V& v) {
  std::size_t s = 0;
  for (const auto& x : v) s += (x != 0);
  return s;
}

// Input contract: |z_i| <= Z and |a_i| <= Z 2^n.
inline void check_message_bound(const EvalVector& z, const Int& Z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (abs(z[i]) > Z) throw BoundViolation("message entry " + std::to_string(i) + " exceeds Z");
}

inline void check_received_bounds(const CodewordPairSeq& w, const Int& Z) {
  Int za = Z;
  za <<= static_cast<mp_bitcnt_t>(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (abs(w[i].z) > Z) throw BoundViolation("received z at " + std::to_string(i) + " exceeds Z");
    if (abs(w[i].a) > za) throw BoundViolation("received a at " + std::to_string(i) + " exceeds Z*2^n");
  }
}

}  // namespace chs
