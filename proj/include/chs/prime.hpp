#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bigint.hpp"

namespace chs {

inline bool miller_rabin_round(const Int& n, const Int& base, const Int& d, std::size_t s) {
  Int nm1 = n - 1;
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (std::size_t k = 1; k < s; ++k) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Base 2 first, then `rounds` random bases. Error <= 4^-rounds on composites.
inline bool is_probable_prime(const Int& n, std::size_t rounds, Rng& rng) {
  if (n < 2) return false;
  for (unsigned q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  Int d = n - 1;
  std::size_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  if (!miller_rabin_round(n, Int(2), d, s)) return false;
  for (std::size_t i = 0; i < rounds; ++i) {
    Int a = random_between(Int(2), n - 2, rng);
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    const std::uint32_t limit = 1u << 20;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

struct PrimeFieldCtx {
  Int p;
  std::size_t n = 0;
  Int Z;
};

// Integer form of the open/closed interval (M, 2M] with
// M = max(2^(n^2) n^(n/2), 2 Z 2^n); n^(n/2) may be irrational, so work with squares.
struct PrimeInterval {
  Int lo, hi;
};

inline PrimeInterval prime_interval(std::size_t n, const Int& Z) {
  Int s;  // 4^(n^2) n^n = (2^(n^2) n^(n/2))^2
  mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
  s <<= static_cast<mp_bitcnt_t>(2 * n * n);
  Int g = 2 * Z;
  g <<= static_cast<mp_bitcnt_t>(n);
  Int root;
  mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
  PrimeInterval iv;
  if (s >= g * g) {
    Int s4 = 4 * s;
    iv.lo = root + 1;
    mpz_sqrt(iv.hi.get_mpz_t(), s4.get_mpz_t());
  } else {
    iv.lo = g + 1;
    iv.hi = 2 * g;
  }
  return iv;
}

inline bool satisfies_prime_bounds(const PrimeFieldCtx& ctx) {
  auto iv = prime_interval(ctx.n, ctx.Z);
  return ctx.p >= iv.lo && ctx.p <= iv.hi;
}

// Random start in the interval, then an upward sieved scan (wrapping once).
// Survivors of trial division get one base-2 round; the first survivor of that
// gets the full test.
inline PrimeFieldCtx generate_prime(std::size_t n, const Int& Z, std::uint64_t seed,
                                    std::size_t mr_rounds = 100,
                                    std::size_t candidate_budget = 10'000'000) {
  if (n < 1 || Z < 1) throw PreconditionViolation("generate_prime: need n >= 1 and Z >= 1");
  auto iv = prime_interval(n, Z);
  Rng rng = make_rng(seed, 0x7072696d65ULL);
  Int start = random_between(iv.lo, iv.hi, rng);
  const auto& primes = small_primes();
  const std::size_t window = 1 << 16;
  std::size_t tested = 0;
  std::vector<char> dead;

  auto scan = [&](Int from, const Int& to) -> std::optional<Int> {
    while (from <= to) {
      Int span = to - from + 1;
      std::size_t len = span > window ? window : span.get_ui();
      dead.assign(len, 0);
      for (std::uint32_t q : primes) {
        if (Int(q) * q > to) break;
        unsigned long r = mpz_fdiv_ui(from.get_mpz_t(), q);
        std::size_t first = r == 0 ? 0 : q - r;
        for (std::size_t k = first; k < len; k += q) dead[k] = 1;
      }
      for (std::size_t k = 0; k < len; ++k) {
        if (dead[k]) continue;
        Int c = from + static_cast<unsigned long>(k);
        if (++tested > candidate_budget)
          throw InternalInvariant("generate_prime: candidate budget exhausted");
        if (is_probable_prime(c, 0, rng) && is_probable_prime(c, mr_rounds, rng)) return c;
      }
      from += static_cast<unsigned long>(len);
    }
    return std::nullopt;
  };

  auto found = scan(start, iv.hi);
  if (!found) found = scan(iv.lo, start - 1);
  if (!found) throw InternalInvariant("generate_prime: interval contains no prime");
  return PrimeFieldCtx{*found, n, Z};
}

}  // namespace chs
