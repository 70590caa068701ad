#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "core_transform.hpp"
#include "rng.hpp"
#include "variants.hpp"

namespace chs::convex {

struct OnlineSystem {
  std::size_t n = 0;
  Eigen::MatrixXd B;         // C(i, j), lower triangular
  Eigen::MatrixXd combined;  // [I | -B]
  Eigen::VectorXd col_norms;
};

// C(39, 19) < 2^53: every entry is an exact double up to n = 40.
inline OnlineSystem build_online_system(std::size_t n, std::size_t bound = 40) {
  if (n < 1) throw PreconditionViolation("online system needs n >= 1");
  if (n > bound) throw PreconditionViolation("n=" + std::to_string(n) + " exceeds the exact-float bound " + std::to_string(bound));
  OnlineSystem s;
  s.n = n;
  s.B = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) s.B(i, j) = binomial(i, j).get_d();
  s.combined.resize(n, 2 * n);
  s.combined << Eigen::MatrixXd::Identity(n, n), -s.B;
  s.col_norms = s.combined.colwise().norm().transpose();
  return s;
}

struct L1Result {
  Eigen::VectorXd u, v;
  double objective = 0;
  double residual = 0;
  std::size_t iterations = 0;
};

struct SolverOptions {
  double tol = 1e-6;
  std::size_t max_iterations = 100000;
};

namespace detail {

// min sum x s.t. M x = b, x >= 0, by a dense tableau simplex with Bland's rule.
// The caller supplies rows already signed so that b >= 0 and column `start[i]`
// equals e_i, giving a feasible identity start.
inline std::vector<double> simplex(Eigen::MatrixXd T, Eigen::VectorXd b, std::vector<std::size_t> basis,
                                   const SolverOptions& opt, std::size_t& iterations) {
  const Eigen::Index m = T.rows(), N = T.cols();
  const Eigen::MatrixXd T0 = T;
  const Eigen::VectorXd b0 = b;
  double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
  const double eps = 1e-11 * scale;
  iterations = 0;
  for (;;) {
    Eigen::RowVectorXd reduced = Eigen::RowVectorXd::Ones(N);
    for (Eigen::Index i = 0; i < m; ++i) reduced -= T.row(i);
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < N; ++j)
      if (reduced(j) < -1e-12 * scale) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    if (++iterations > opt.max_iterations) throw SolverNonConvergence("simplex: iteration budget exhausted");
    Eigen::Index leave = -1;
    double best = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) <= eps) continue;
      double ratio = b(i) / T(i, enter);
      double tie = 1e-9 * std::max(1.0, std::abs(best));
      if (leave < 0 || ratio < best - tie || (ratio <= best + tie && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw SolverNonConvergence("simplex: unbounded direction");
    double piv = T(leave, enter);
    T.row(leave) /= piv;
    b(leave) /= piv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || T(i, enter) == 0) continue;
      double f = T(i, enter);
      T.row(i) -= f * T.row(leave);
      b(i) -= f * b(leave);
    }
    basis[static_cast<std::size_t>(leave)] = static_cast<std::size_t>(enter);
  }
  // Re-solve the final basis from the original data to shed pivoting error.
  Eigen::MatrixXd AB(m, m);
  for (Eigen::Index i = 0; i < m; ++i) AB.col(i) = T0.col(static_cast<Eigen::Index>(basis[i]));
  Eigen::VectorXd xb = AB.fullPivLu().solve(b0);
  if ((xb.array() < -1e-9).any() || !xb.allFinite()) xb = b;
  std::vector<double> x(static_cast<std::size_t>(N), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) x[basis[i]] = std::max(0.0, xb(i));
  return x;
}

inline Eigen::VectorXd received_rhs(const CodewordPairSeq& w) {
  std::size_t n = w.size();
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int acc = w[i].z;
    for (std::size_t j = 0; j <= i; ++j) acc -= binomial(i, j) * w[j].a;
    rhs(static_cast<Eigen::Index>(i)) = acc.get_d();
  }
  return rhs;
}

}  // namespace detail

// argmin |u|_1 + |v|_1 s.t. z - u = B(a - v) on the rows not in `erased`.
inline L1Result erasure_decode(const CodewordPairSeq& w, const std::vector<std::size_t>& erased,
                               const OnlineSystem& sys, const SolverOptions& opt = {}) {
  const std::size_t n = sys.n;
  if (w.size() != n) throw PreconditionViolation("received length does not match the online system");
  std::vector<char> drop(n, 0);
  for (auto e : erased) {
    if (e >= n) throw PreconditionViolation("erasure index outside [0, n)");
    drop[e] = 1;
  }
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) rows.push_back(i);
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size()), N = static_cast<Eigen::Index>(4 * n);
  Eigen::VectorXd rhs_full = detail::received_rhs(w);

  // Columns: u+, u-, v+, v-.  u - B v = rhs.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, N);
  Eigen::VectorXd b(m);
  std::vector<std::size_t> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    auto i = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]);
    double sgn = rhs_full(i) < 0 ? -1.0 : 1.0;
    T(r, i) = sgn;
    T(r, static_cast<Eigen::Index>(n) + i) = -sgn;
    for (Eigen::Index j = 0; j <= i; ++j) {
      T(r, 2 * static_cast<Eigen::Index>(n) + j) = -sgn * sys.B(i, j);
      T(r, 3 * static_cast<Eigen::Index>(n) + j) = sgn * sys.B(i, j);
    }
    b(r) = sgn * rhs_full(i);
    basis[static_cast<std::size_t>(r)] = static_cast<std::size_t>(sgn > 0 ? i : static_cast<Eigen::Index>(n) + i);
  }

  L1Result res;
  auto x = detail::simplex(T, b, basis, opt, res.iterations);
  res.u.resize(static_cast<Eigen::Index>(n));
  res.v.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    res.u(static_cast<Eigen::Index>(i)) = x[i] - x[n + i];
    res.v(static_cast<Eigen::Index>(i)) = x[2 * n + i] - x[3 * n + i];
  }
  res.objective = res.u.lpNorm<1>() + res.v.lpNorm<1>();
  Eigen::VectorXd resid = res.u - sys.B * res.v - rhs_full;
  res.residual = 0;
  for (auto i : rows) res.residual = std::max(res.residual, std::abs(resid(static_cast<Eigen::Index>(i))));
  if (res.residual > opt.tol * std::max(1.0, rhs_full.cwiseAbs().maxCoeff()))
    throw SolverNonConvergence("simplex: feasibility residual above tolerance");
  return res;
}

inline L1Result l1_decode(const CodewordPairSeq& w, const OnlineSystem& sys, const SolverOptions& opt = {}) {
  return erasure_decode(w, {}, sys, opt);
}

inline std::size_t support_size(const L1Result& r, double tol) {
  std::size_t s = 0;
  for (Eigen::Index i = 0; i < r.u.size(); ++i) s += std::abs(r.u(i)) > tol;
  for (Eigen::Index i = 0; i < r.v.size(); ++i) s += std::abs(r.v(i)) > tol;
  return s;
}

struct L0Result {
  std::size_t support_size = 0;
  std::vector<std::size_t> support;  // columns of [I | -B]
};

// Smallest support of [I | -B] (restricted to kept rows) spanning z - B a,
// by exhaustive search with exact rational elimination.
inline std::optional<L0Result> l0_oracle(const CodewordPairSeq& w, std::size_t max_support,
                                         const std::vector<std::size_t>& erased = {}) {
  const std::size_t n = w.size();
  std::vector<char> drop(n, 0);
  for (auto e : erased) drop[e] = 1;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) rows.push_back(i);
  std::vector<Int> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = w[i].z;
    for (std::size_t j = 0; j <= i; ++j) rhs[i] -= binomial(i, j) * w[j].a;
  }
  auto entry = [&](std::size_t row, std::size_t col) -> Int {
    if (col < n) return row == col ? 1 : 0;
    return -binomial(row, col - n);
  };
  bool zero = std::all_of(rows.begin(), rows.end(), [&](std::size_t i) { return rhs[i] == 0; });
  if (zero) return L0Result{};

  auto spans = [&](const std::vector<std::size_t>& cols) {
    std::size_t k = cols.size();
    std::vector<std::vector<mpq_class>> m;
    for (auto r : rows) {
      std::vector<mpq_class> row(k + 1);
      for (std::size_t c = 0; c < k; ++c) row[c] = entry(r, cols[c]);
      row[k] = rhs[r];
      m.push_back(std::move(row));
    }
    std::size_t prow = 0;
    for (std::size_t c = 0; c < k && prow < m.size(); ++c) {
      std::size_t p = prow;
      while (p < m.size() && m[p][c] == 0) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[prow]);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == prow || m[i][c] == 0) continue;
        mpq_class f = m[i][c] / m[prow][c];
        for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[prow][j];
      }
      ++prow;
    }
    for (std::size_t i = prow; i < m.size(); ++i)
      if (m[i][k] != 0) return false;
    return true;
  };

  const std::size_t total = 2 * n;
  for (std::size_t s = 1; s <= max_support && s <= total; ++s) {
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (spans(idx)) return L0Result{s, idx};
      std::size_t p = s;
      while (p > 0 && idx[p - 1] == total - s + (p - 1)) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < s; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return std::nullopt;
}

struct AgreementReport {
  std::size_t n = 0, trials = 0, agree = 0, l1_exact = 0;
  std::uint64_t seed = 0;
  double rate() const { return trials ? static_cast<double>(agree) / static_cast<double>(trials) : 0; }
};

// Random messages in [-Z, Z] with one +-1 evaluation error at a random index.
// A trial agrees when the l1 support (entries above 1e3 tol) equals the l0 oracle's support.
inline AgreementReport l0_agreement(std::size_t n, std::size_t trials, std::uint64_t seed, long Z = 8,
                                    std::size_t max_support = 3, const SolverOptions& opt = {}) {
  auto sys = build_online_system(n);
  PascalTable C(n);
  AgreementReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, t);
    EvalVector z(n);
    for (auto& v : z) v = random_between(Int(-Z), Int(Z), rng);
    auto w = encode_tc(z, C);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    w[i].z += rng() % 2 ? 1 : -1;
    auto l1 = l1_decode(w, sys, opt);
    auto l0 = l0_oracle(w, max_support);
    std::vector<std::size_t> supp;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(l1.u(static_cast<Eigen::Index>(k))) > 1e3 * opt.tol) supp.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(l1.v(static_cast<Eigen::Index>(k))) > 1e3 * opt.tol) supp.push_back(n + k);
    rep.agree += l0 && l0->support == supp;
    rep.l1_exact += supp == std::vector<std::size_t>{i};
  }
  return rep;
}

struct RipEstimate {
  std::size_t S = 0;
  std::size_t trials = 0;
  double delta_hat = 0;  // a lower bound on the restricted isometry constant
};

namespace detail {

// Per trial: a random column order and a complex Gaussian w; every prefix of
// length s <= S is tested, so estimates nest in S and in the trial count.
inline RipEstimate probe(const Eigen::MatrixXcd& A0, std::size_t S, std::size_t trials, std::uint64_t base) {
  // Extended precision: squared norms of Pascal columns exceed 2^53 well before n = 32.
  using cld = std::complex<long double>;
  Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic> A = A0.cast<cld>();
  const std::size_t cols = static_cast<std::size_t>(A.cols());
  if (S < 1 || S > cols) throw PreconditionViolation("sparsity must lie in [1, 2n]");
  for (Eigen::Index c = 0; c < A.cols(); ++c) {
    long double nrm = A.col(c).norm();
    if (nrm > 0) A.col(c) /= nrm;
  }
  RipEstimate est{S, trials, 0.0};
  std::vector<std::size_t> perm(cols);
  for (std::size_t t = 0; t < trials; ++t) {
    // Separate streams for columns and weights keep every prefix independent of S.
    std::uint64_t ts = split_seed(base, t);
    Rng col_rng = make_rng(ts, 0), w_rng = make_rng(ts, 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < S; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, cols - 1);
      std::swap(perm[i], perm[pick(col_rng)]);
    }
    std::normal_distribution<double> gauss;
    std::vector<cld> w(S);
    for (std::size_t i = 0; i < S; ++i) {
      double re = gauss(w_rng), im = gauss(w_rng);
      w[i] = {re, im};
    }
    Eigen::Matrix<cld, Eigen::Dynamic, 1> acc = Eigen::Matrix<cld, Eigen::Dynamic, 1>::Zero(A.rows());
    long double wn = 0;
    for (std::size_t s = 0; s < S; ++s) {
      acc += A.col(static_cast<Eigen::Index>(perm[s])) * w[s];
      wn += std::norm(w[s]);
      double dev = static_cast<double>(std::abs(acc.squaredNorm() / wn - 1.0L));
      est.delta_hat = std::max(est.delta_hat, dev);
    }
  }
  return est;
}

}  // namespace detail

inline RipEstimate rip_probe(const OnlineSystem& sys, std::size_t S, std::size_t trials, Rng& rng) {
  return detail::probe(sys.combined.cast<std::complex<double>>(), S, trials, rng());
}

enum class PointSource { NEWTON, CYCLOTOMIC, SUNFLOWER, WEYL };

struct VariantOptions {
  std::size_t ell = 0;  // 0: smallest prime above n^3
  variants::AlgebraicReal theta = variants::AlgebraicReal::golden_section();
  unsigned precision = 256;
};

// Lower-triangular A for a point source, as complex doubles.
inline Eigen::MatrixXcd variant_matrix(PointSource src, std::size_t n, const VariantOptions& opt) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (src != PointSource::NEWTON && opt.precision < 64) throw PrecisionUnderflow("variant matrices need at least 64 bits");
  std::vector<std::vector<variants::HPComplex>> table;
  switch (src) {
    case PointSource::NEWTON:
      return build_online_system(n).B.cast<std::complex<double>>();
    case PointSource::CYCLOTOMIC: {
      std::size_t ell = opt.ell ? opt.ell : variants::cyclotomic_conductor(n);
      variants::require_conductor(n, ell);
      // zeta_l = e^{2 pi i / l}: the circle machinery with theta = 1/l.
      variants::AlgebraicReal inv{{Int(-1), Int(static_cast<unsigned long>(ell))},
                                  mpq_class(1, static_cast<unsigned long>(ell + 1)),
                                  mpq_class(1, static_cast<unsigned long>(ell - 1))};
      table = variants::detail::hp_binomial_table(n, variants::detail::hp_qpowers(inv, n, opt.precision), opt.precision);
      break;
    }
    case PointSource::SUNFLOWER:
      table = variants::detail::hp_binomial_table(n, variants::detail::hp_qpowers(opt.theta, n, opt.precision),
                                                  opt.precision);
      break;
    case PointSource::WEYL:
      table = variants::weyl_table(n, opt.theta, opt.precision);
      break;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = table[i][j].to_complex();
  return A;
}

inline RipEstimate variant_rip_probe(PointSource src, std::size_t n, std::size_t S, std::size_t trials, Rng& rng,
                                     const VariantOptions& opt = {}) {
  Eigen::MatrixXcd A = variant_matrix(src, n, opt);
  Eigen::MatrixXcd combined(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(2 * n));
  combined << Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), -A;
  return detail::probe(combined, S, trials, rng());
}

}  // namespace chs::convex
