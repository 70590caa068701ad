#pragma once

#include <cstddef>
#include <string>
#include <optional>
#include <vector>

#include "../bigint.hpp"
#include "../lgv.hpp"

namespace chs::variants {

// Dense integer polynomial in q, lowest degree first, no trailing zeros.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(Int c) {
    if (c != 0) c_.push_back(std::move(c));
  }
  explicit QPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPolynomial monomial(std::size_t k, Int coeff = 1) {
    std::vector<Int> v(k + 1, 0);
    v[k] = std::move(coeff);
    return QPolynomial(std::move(v));
  }

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
  const Int& leading() const { return c_.back(); }

  Int eval(const Int& q) const {
    Int acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * q + c_[k];
    return acc;
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  QPolynomial& operator-=(const QPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator-(QPolynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> out(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return QPolynomial(std::move(out));
  }

  // q^k * this
  QPolynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Int> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return QPolynomial(std::move(v));
  }

  bool operator==(const QPolynomial&) const = default;

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += c_[k] < 0 ? " - " : " + ";
      else if (c_[k] < 0) s += "-";
      Int a = abs(c_[k]);
      if (a != 1 || k == 0) s += a.get_str();
      if (k >= 1) s += "q";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// Exact quotient a / b; throws if b does not divide a over Z[q].
inline QPolynomial exact_div(const QPolynomial& a, const QPolynomial& b) {
  if (b.is_zero()) throw InternalInvariant("exact_div: division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw InternalInvariant("exact_div: not divisible");
  std::vector<Int> rem = a.coeffs();
  std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Int> quot(rem.size() - db, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Int& top = rem[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t()))
      throw InternalInvariant("exact_div: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
    quot[k] = q;
  }
  for (const auto& x : rem)
    if (x != 0) throw InternalInvariant("exact_div: nonzero remainder");
  return QPolynomial(std::move(quot));
}

// Gaussian binomials [r, s]_q for r < depth via [r,s] = [r-1,s-1] + q^s [r-1,s].
inline std::vector<std::vector<QPolynomial>> q_binomial_table(std::size_t depth) {
  std::vector<std::vector<QPolynomial>> t(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    t[r].resize(r + 1);
    t[r][0] = QPolynomial(Int(1));
    for (std::size_t s = 1; s <= r; ++s) {
      QPolynomial v = t[r - 1][s - 1];
      if (s < r) v += t[r - 1][s].shifted(s);
      t[r][s] = std::move(v);
    }
  }
  return t;
}

inline QPolynomial q_binomial(std::size_t r, std::size_t s) {
  if (s > r) return {};
  return q_binomial_table(r + 1)[r][s];
}

// Symbolic det {[r_i, c_j]_q} by fraction-free elimination over Z[q].
inline QPolynomial q_lgv_det(const lgv::IndexPairSelection& sel) {
  sel.validate();
  std::size_t d = sel.size();
  if (d == 0) return QPolynomial(Int(1));
  auto table = q_binomial_table(sel.rows.back() + 1);
  std::vector<std::vector<QPolynomial>> m(d, std::vector<QPolynomial>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (sel.cols[j] <= sel.rows[i]) m[i][j] = table[sel.rows[i]][sel.cols[j]];
  QPolynomial prev(Int(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    std::size_t piv = k;
    while (piv < d && m[piv][k].is_zero()) ++piv;
    if (piv == d) return {};
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = QPolynomial();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[d - 1][d - 1] : -m[d - 1][d - 1];
}

// Degree promised for q_lgv_det: sum c_i (r_i - c_i).
inline std::size_t lgv_degree(const lgv::IndexPairSelection& sel) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < sel.size(); ++i) d += sel.cols[i] * (sel.rows[i] - sel.cols[i]);
  return d;
}


struct BatteryViolation {
  lgv::IndexPairSelection sel;
  QPolynomial det;
  std::string reason;
};

// Checks every selection with d <= max_d, r <= max_r: monic, degree sum c_i(r_i - c_i),
// nonnegative coefficients, sub-leading sum = pascal_submatrix_det - 1.
// With max_degree set, also requires degree < max_degree.
inline std::vector<BatteryViolation> q_lgv_battery(std::size_t max_d, std::size_t max_r, std::size_t* checked = nullptr,
                                                   std::optional<long> max_degree = std::nullopt) {
  std::vector<BatteryViolation> bad;
  std::size_t count = 0;
  for (auto& sel : lgv::enumerate_selections(max_d, max_r)) {
    ++count;
    auto q = q_lgv_det(sel);
    std::string why;
    if (q.is_zero()) why = "zero";
    else if (q.leading() != 1) why = "not monic";
    else if (q.degree() != static_cast<long>(lgv_degree(sel))) why = "degree";
    else if (max_degree && q.degree() >= *max_degree) why = "degree bound";
    else {
      Int sub = 0;
      for (long k = 0; k < q.degree(); ++k) {
        if (q.coeff(static_cast<std::size_t>(k)) < 0) why = "negative coefficient";
        sub += q.coeff(static_cast<std::size_t>(k));
      }
      if (why.empty() && sub != lgv::pascal_submatrix_det(sel) - 1) why = "coefficient sum";
    }
    if (!why.empty()) bad.push_back({std::move(sel), std::move(q), std::move(why)});
  }
  if (checked) *checked = count;
  return bad;
}

}  // namespace chs::variants
