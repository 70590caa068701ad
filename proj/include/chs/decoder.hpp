#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "core_transform.hpp"
#include "field.hpp"
#include "lgv.hpp"
#include "params.hpp"
#include "prime.hpp"

namespace chs::decode {

using Received = std::span<const SymbolPair>;

// Shared read-only state for decoding words of length field.n: the prime,
// Pascal rows, and search_params for every suffix length.
class DecoderContext {
 public:
  DecoderContext(PrimeFieldCtx field, double c) : field_(std::move(field)), c_(c), pascal_(field_.n + 1) {
    params_.resize(field_.n + 1);
    for (std::size_t m = 8; m <= field_.n; ++m) {
      try {
        params_[m] = search_params(static_cast<std::int64_t>(m), c);
      } catch (const InfeasibleParams&) {
      }
    }
  }

  const PrimeFieldCtx& field() const { return field_; }
  const Int& p() const { return field_.p; }
  double c() const { return c_; }
  const PascalTable& pascal() const { return pascal_; }

  const std::optional<DecodeParams>& params_for(std::size_t m) const {
    static const std::optional<DecodeParams> none;
    return m < params_.size() ? params_[m] : none;
  }

 private:
  PrimeFieldCtx field_;
  double c_;
  PascalTable pascal_;
  std::vector<std::optional<DecodeParams>> params_;
};

inline DecoderContext make_context(std::size_t n, const Int& Z, double c, std::uint64_t seed) {
  return DecoderContext(generate_prime(n, Z, seed), c);
}

struct ResidualVector {
  std::vector<Int> y;  // least nonnegative residues mod p
};

// y_i = z_i - sum_{j<=i} a_j C(k+i, k+j) mod p on the suffix starting at global index k.
inline ResidualVector residual_vector(Received w, const DecoderContext& ctx, std::size_t offset = 0) {
  const auto& C = ctx.pascal();
  ResidualVector res;
  res.y.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    Int acc = w[i].z;
    for (std::size_t j = 0; j <= i; ++j) acc -= w[j].a * C(offset + i, offset + j);
    res.y[i] = mod(acc, ctx.p());
  }
  return res;
}

struct LocatorWitness {
  std::vector<std::size_t> J;
  std::vector<Int> b;  // Newton coefficients in the suffix basis, indexed by position; empty unless requested
  std::vector<Int> c;  // c(x) = sum_t c_t C(x, t), t < alpha
  std::size_t i0 = 0;
};

// Value of c(x) = sum_t c_t C(x, t) at x, mod p.
inline Int eval_locator(const std::vector<Int>& c, std::size_t x, const DecoderContext& ctx) {
  Int acc = 0;
  for (std::size_t t = 0; t < c.size() && t <= x; ++t) acc += c[t] * ctx.pascal()(x, t);
  return mod(acc, ctx.p());
}

namespace detail {

inline std::vector<std::size_t> sample_J(std::size_t beta, std::size_t m, std::size_t size, Rng& rng) {
  std::vector<std::size_t> pool(m - beta);
  std::iota(pool.begin(), pool.end(), beta);
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

// One non-error location. The homogeneous system "b(i) + c(i) y_i = 0 off H,
// c(i) = 0 on H" with b supported on J + [0, beta) is solved in reduced form:
// writing b's values as -c(i) y_i (or a free t_h on H), b's Newton coefficients
// on F = [beta, m) \ J must vanish. That leaves alpha - 1 + |H| equations in
// the alpha + |H| unknowns (c_t, t_h), with a kernel isomorphic to the full one.
inline LocatorWitness locate_one_nonerror(const ResidualVector& yhat, const std::vector<std::size_t>& H,
                                          const DecodeParams& params, const DecoderContext& ctx, Rng& rng,
                                          std::size_t offset = 0, bool full_witness = false) {
  const std::size_t m = yhat.y.size();
  if (params.n != static_cast<std::int64_t>(m)) throw PreconditionViolation("locate_one_nonerror: params length mismatch");
  if (static_cast<std::int64_t>(H.size()) > params.delta - params.epsilon)
    throw PreconditionViolation("locate_one_nonerror: |H| exceeds delta - epsilon");
  const std::size_t alpha = static_cast<std::size_t>(params.alpha), beta = static_cast<std::size_t>(params.beta);
  const Int& p = ctx.p();
  const auto& C = ctx.pascal();

  std::vector<char> in_h(m, 0);
  std::vector<std::size_t> hs = H;
  std::sort(hs.begin(), hs.end());
  for (auto h : hs) {
    if (h >= m) throw PreconditionViolation("locate_one_nonerror: H outside [0, m)");
    in_h[h] = 1;
  }

  LocatorWitness wit;
  wit.J = detail::sample_J(beta, m, m - alpha - beta + 1, rng);
  std::vector<std::size_t> F;
  {
    std::size_t q = 0;
    for (std::size_t j = beta; j < m; ++j) {
      if (q < wit.J.size() && wit.J[q] == j) ++q;
      else F.push_back(j);
    }
  }

  const std::size_t cols = alpha + hs.size();
  Matrix sys;
  sys.reserve(F.size() + hs.size());

  // s_i = (-1)^i y_i, centered so the integer sums stay short.
  std::vector<Int> s(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (!in_h[i]) s[i] = (i % 2 ? -1 : 1) * centered(yhat.y[i], p);

  std::vector<std::vector<Int>> v(alpha, std::vector<Int>(m, 0));
  for (std::size_t t = 0; t < alpha; ++t)
    for (std::size_t i = t; i < m; ++i)
      if (s[i] != 0) v[t][i] = s[i] * C(i, t);

  for (std::size_t j : F) {
    std::vector<Int> row(cols, 0);
    for (std::size_t t = 0; t < alpha && t <= j; ++t) {
      Int acc = 0;
      for (std::size_t i = t; i <= j; ++i)
        if (v[t][i] != 0) acc += C(offset + j, offset + i) * v[t][i];
      row[t] = (j % 2) ? acc : Int(-acc);
    }
    for (std::size_t q = 0; q < hs.size(); ++q) {
      std::size_t h = hs[q];
      if (h <= j) row[alpha + q] = ((h + j) % 2 ? -1 : 1) * C(offset + j, offset + h);
    }
    sys.push_back(std::move(row));
  }
  for (std::size_t h : hs) {
    std::vector<Int> row(cols, 0);
    for (std::size_t t = 0; t < alpha && t <= h; ++t) row[t] = C(h, t);
    sys.push_back(std::move(row));
  }

  auto x = first_kernel_vector(sys, p);
  if (!x) throw InternalInvariant("locator system has trivial kernel");
  wit.c.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(alpha));

  bool found = false;
  for (std::size_t i = 0; i < alpha && i < m; ++i) {
    if (eval_locator(wit.c, i, ctx) != 0) {
      wit.i0 = i;
      found = true;
      break;
    }
  }

  if (full_witness) {
    std::vector<Int> val(m);
    for (std::size_t i = 0, q = 0; i < m; ++i) {
      if (in_h[i]) val[i] = (*x)[alpha + q++];
      else val[i] = mod(-eval_locator(wit.c, i, ctx) * yhat.y[i], p);
    }
    wit.b.assign(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      Int acc = 0;
      for (std::size_t i = 0; i <= j; ++i) {
        Int term = C(offset + j, offset + i) * val[i];
        if ((i + j) % 2) acc -= term;
        else acc += term;
      }
      wit.b[j] = mod(acc, p);
    }
  }

  if (!found) throw LocatorFailure("locator polynomial vanishes on [0, alpha)");
  return wit;
}

// Calls the locator `rounds` times, each call excluding the indices already found.
inline std::vector<std::size_t> locate_nonerrors_rounds(const ResidualVector& yhat, const DecodeParams& params,
                                                        std::size_t rounds, const DecoderContext& ctx, Rng& rng,
                                                        std::size_t offset) {
  std::vector<std::size_t> H;
  for (std::size_t it = 0; it < rounds; ++it) {
    DecodeParams budget = params;
    if (static_cast<std::int64_t>(H.size()) > params.delta - params.epsilon)
      budget.delta = params.epsilon + static_cast<std::int64_t>(H.size());
    H.push_back(locate_one_nonerror(yhat, H, budget, ctx, rng, offset).i0);
  }
  return H;
}

inline std::vector<std::size_t> locate_eval_nonerrors(Received w, const DecodeParams& params,
                                                      const DecoderContext& ctx, Rng& rng, std::size_t offset = 0) {
  auto rounds = static_cast<std::size_t>(params.delta - params.epsilon + 1);
  return locate_nonerrors_rounds(residual_vector(w, ctx, offset), params, rounds, ctx, rng, offset);
}

// Swap the two halves of every pair and apply diag((-1)^i) to both.
inline CodewordPairSeq reverse_input(Received w) {
  CodewordPairSeq out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i % 2) out[i] = {-w[i].a, -w[i].z};
    else out[i] = {w[i].a, w[i].z};
  }
  return out;
}

inline std::vector<std::size_t> locate_newton_nonerrors(Received w, const DecodeParams& params,
                                                        const DecoderContext& ctx, Rng& rng, std::size_t offset = 0) {
  auto rev = reverse_input(w);
  return locate_eval_nonerrors(rev, params, ctx, rng, offset);
}

// z_0 from located non-errors. Off the shortcuts, the residual problem (y, 0)
// is interpolated on the staircase selection and a_0 is added back.
inline Int recover_first_symbol(Received w, const std::vector<std::size_t>& Iz, const std::vector<std::size_t>& Ia,
                                const DecodeParams& params, const DecoderContext& ctx, std::size_t offset = 0) {
  if (w.empty()) throw PreconditionViolation("recover_first_symbol: empty word");
  if (std::find(Iz.begin(), Iz.end(), 0) != Iz.end()) return w[0].z;
  if (std::find(Ia.begin(), Ia.end(), 0) != Ia.end()) return w[0].a;
  auto st = lgv::staircase_select(Iz, Ia, static_cast<std::size_t>(params.alpha), false);
  const auto& sel = st.selection;
  // Only the first i0 residual entries are needed.
  auto yhat = residual_vector(w.first(std::min(w.size(), st.i0)), ctx, offset);
  std::vector<Int> vals;
  for (auto r : sel.rows) vals.push_back(yhat.y[r]);
  auto g = lgv::lgv_interpolate(sel, vals, ctx.p(), offset);
  // 0 is always a column, and C(k, k + c) vanishes for c > 0.
  Int g0 = sel.cols.front() == 0 ? g.front() : Int(0);
  return centered(g0 + w[0].a, ctx.p());
}

inline std::size_t padded_rounds(const DecodeParams& p) {
  std::size_t base = static_cast<std::size_t>(p.delta - p.epsilon + 1);
  std::size_t want = static_cast<std::size_t>((p.alpha + 1) / 2);
  auto cap = static_cast<std::int64_t>(std::floor(delta_bound(p))) - p.epsilon + 1;
  std::size_t allowed = cap > 0 ? static_cast<std::size_t>(cap) : 0;
  return std::max(base, std::min(want, allowed));
}

// Peel one symbol per step; suffix step k keeps global binomials C(k+i, k+j).
// Suffix lengths without feasible parameters fall back to the received z.
inline EvalVector decode_full(const CodewordPairSeq& received, const Int& Z, const DecoderContext& ctx, Rng& rng) {
  const std::size_t n = received.size();
  if (n != ctx.field().n) throw PreconditionViolation("decode_full: context built for another length");
  check_received_bounds(received, Z);
  if (!ctx.params_for(n)) throw InfeasibleParams("no feasible parameters at n=" + std::to_string(n));
  const auto& C = ctx.pascal();

  CodewordPairSeq w = received;
  EvalVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Received suffix(w.data() + k, n - k);
    const auto& params = ctx.params_for(n - k);
    Int zk;
    if (!params) {
      zk = abs(suffix[0].z) <= Z ? suffix[0].z : suffix[0].a;
    } else {
      std::size_t rounds = padded_rounds(*params);
      auto Iz = locate_nonerrors_rounds(residual_vector(suffix, ctx, k), *params, rounds, ctx, rng, k);
      std::vector<std::size_t> Ia;
      if (std::find(Iz.begin(), Iz.end(), 0) == Iz.end()) {
        auto rev = reverse_input(suffix);
        Ia = locate_nonerrors_rounds(residual_vector(rev, ctx, k), *params, rounds, ctx, rng, k);
      }
      zk = recover_first_symbol(suffix, Iz, Ia, *params, ctx, k);
    }
    out[k] = zk;
    w[k].z -= zk;
    for (std::size_t j = k; j < n; ++j) {
      Int t = C(j, k) * zk;
      if ((j - k) % 2) w[j].a += t;
      else w[j].a -= t;
    }
  }
  return out;
}

struct AmplifiedResult {
  EvalVector z;
  std::size_t attempts = 0;
  std::size_t distance = 0;
};

// Las Vegas: only outputs within Z whose encoding is within n/2 of the received word.
inline AmplifiedResult amplified_decode(const CodewordPairSeq& received, const Int& Z, const DecoderContext& ctx,
                                        Rng& rng, std::size_t budget) {
  const std::size_t n = received.size();
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    EvalVector z;
    try {
      z = decode_full(received, Z, ctx, rng);
    } catch (const LocatorFailure&) {
      continue;
    } catch (const StaircaseFailure&) {
      continue;
    }
    bool in_bounds = std::all_of(z.begin(), z.end(), [&](const Int& v) { return abs(v) <= Z; });
    if (!in_bounds) continue;
    std::size_t d = pair_hamming(encode_tc(z, ctx.pascal()), received);
    if (2 * d <= n) return {std::move(z), attempt, d};
  }
  throw BudgetExhausted("amplified_decode: no verified output within " + std::to_string(budget) + " attempts");
}

}  // namespace chs::decode
