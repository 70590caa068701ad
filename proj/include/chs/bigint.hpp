#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace chs {

using Int = mpz_class;

inline Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("not a decimal integer: '" + s + "'");
  return v;
}

inline std::string to_dec(const Int& v) { return v.get_str(10); }

// Least nonnegative residue.
inline Int mod(const Int& v, const Int& p) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

// Representative in [-(p-1)/2, (p-1)/2] for odd p.
inline Int centered(const Int& v, const Int& p) {
  Int r = mod(v, p);
  if (2 * r > p) r -= p;
  return r;
}

// Uniform in [0, bound).
inline Int random_below(const Int& bound, Rng& rng) {
  if (bound <= 0) throw PreconditionViolation("random_below: bound must be positive");
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  Int r;
  for (;;) {
    for (auto& w : buf) w = rng();
    std::size_t extra = words * 64 - bits;
    if (extra) buf.back() >>= extra;
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (r < bound) return r;
  }
}

inline Int random_between(const Int& lo, const Int& hi, Rng& rng) {
  return lo + random_below(hi - lo + 1, rng);
}

}  // namespace chs
