#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "../bigint.hpp"

namespace chs::variants {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Real algebraic number: a root of `poly` (lowest degree first) isolated in [lo, hi].
struct AlgebraicReal {
  std::vector<Int> poly;
  mpq_class lo, hi;

  static AlgebraicReal golden_section() { return {{Int(-1), Int(1), Int(1)}, mpq_class(3, 5), mpq_class(7, 10)}; }
};

namespace detail {

// Sign of poly(m / 2^b), exactly.
inline int dyadic_sign(const std::vector<Int>& poly, const Int& m, std::size_t b) {
  Int acc = 0;
  std::size_t d = poly.size() - 1;
  // sum a_k m^k 2^{b(d-k)}, Horner on m with the 2^b weights folded in.
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * m + (poly[k] << static_cast<mp_bitcnt_t>(b * (d - k)));
  return sgn(acc);
}

}  // namespace detail

// Dyadic m / 2^b within 2^-b of the root. Newton in MPFR proposes, an exact
// sign test certifies, and plain bisection is the fallback.
inline void refine(const AlgebraicReal& th, std::size_t b, Int& m) {
  if (th.poly.size() < 2) throw PreconditionViolation("algebraic number needs a nonconstant polynomial");
  mpq_class lo = th.lo, hi = th.hi;
  auto sign_q = [&](const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t k = th.poly.size(); k-- > 0;) acc = acc * x + mpq_class(th.poly[k]);
    return sgn(acc);
  };
  int slo = sign_q(lo), shi = sign_q(hi);
  if (slo == 0 || shi == 0 || slo == shi) throw PreconditionViolation("isolating interval must bracket a sign change");

  {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(b + 64);
    Mpfr x(prec), f(prec), df(prec), t(prec);
    mpq_class mid = (lo + hi) / 2;
    mpfr_set_q(x.get(), mid.get_mpq_t(), MPFR_RNDN);
    for (int it = 0; it < 200; ++it) {
      mpfr_set_z(f.get(), th.poly.back().get_mpz_t(), MPFR_RNDN);
      mpfr_set_ui(df.get(), 0, MPFR_RNDN);
      for (std::size_t k = th.poly.size() - 1; k-- > 0;) {
        mpfr_mul(df.get(), df.get(), x.get(), MPFR_RNDN);
        mpfr_add(df.get(), df.get(), f.get(), MPFR_RNDN);
        mpfr_mul(f.get(), f.get(), x.get(), MPFR_RNDN);
        mpfr_add_z(f.get(), f.get(), th.poly[k].get_mpz_t(), MPFR_RNDN);
      }
      if (mpfr_zero_p(df.get())) break;
      mpfr_div(t.get(), f.get(), df.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), t.get(), MPFR_RNDN);
      if (mpfr_zero_p(t.get()) || mpfr_get_exp(t.get()) < -static_cast<mpfr_exp_t>(b + 8)) break;
    }
    mpfr_mul_2ui(t.get(), x.get(), static_cast<unsigned long>(b), MPFR_RNDN);
    mpfr_get_z(m.get_mpz_t(), t.get(), MPFR_RNDN);
    Int left = m - 1, right = m + 1;
    int sl = detail::dyadic_sign(th.poly, left, b), sr = detail::dyadic_sign(th.poly, right, b);
    mpq_class ql(left, Int(1) << static_cast<mp_bitcnt_t>(b)), qr(right, Int(1) << static_cast<mp_bitcnt_t>(b));
    ql.canonicalize();
    qr.canonicalize();
    if (sl != 0 && sr != 0 && sl != sr && ql >= lo && qr <= hi) return;
  }

  for (;;) {
    mpq_class mid = (lo + hi) / 2;
    mpq_class scaled = mid * mpq_class(Int(1) << static_cast<mp_bitcnt_t>(b));
    if (hi - lo < mpq_class(1, Int(1) << static_cast<mp_bitcnt_t>(b))) {
      mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      return;
    }
    int s = sign_q(mid);
    if (s == 0) {
      lo = hi = mid;
    } else if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

// Fixed-point complex: value = (re + i im) / 2^P.
struct HPComplex {
  Int re, im;
  unsigned P = 0;

  static HPComplex from_int(const Int& v, unsigned P) { return {v << P, Int(0), P}; }
  static HPComplex zero(unsigned P) { return {Int(0), Int(0), P}; }
  static HPComplex one(unsigned P) { return from_int(Int(1), P); }

  friend HPComplex operator+(const HPComplex& a, const HPComplex& b) { return {a.re + b.re, a.im + b.im, a.P}; }
  friend HPComplex operator-(const HPComplex& a, const HPComplex& b) { return {a.re - b.re, a.im - b.im, a.P}; }
  friend HPComplex operator-(const HPComplex& a) { return {-a.re, -a.im, a.P}; }
  HPComplex& operator+=(const HPComplex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  HPComplex& operator-=(const HPComplex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  friend HPComplex operator*(const HPComplex& a, const HPComplex& b) {
    return {round_shift(a.re * b.re - a.im * b.im, a.P), round_shift(a.re * b.im + a.im * b.re, a.P), a.P};
  }
  friend HPComplex operator*(const HPComplex& a, const Int& k) { return {a.re * k, a.im * k, a.P}; }

  bool operator==(const HPComplex&) const = default;

  std::complex<double> to_complex() const { return {scaled(re), scaled(im)}; }

  // max(|re|, |im|) < 2^-bits
  bool within(long bits) const {
    auto small = [&](const Int& v) {
      if (v == 0) return true;
      return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) <= static_cast<long>(P) - bits;
    };
    return small(re) && small(im);
  }

  static Int round_shift(const Int& v, unsigned P) {
    Int r = v;
    if (P == 0) return r;
    r += Int(1) << (P - 1);
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), P);
    return r;
  }

 private:
  double scaled(const Int& v) const {
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e - static_cast<long>(P)));
  }
};

inline std::string to_hex(const Int& v) {
  std::string s = Int(abs(v)).get_str(16);
  return (v < 0 ? "-0x" : "0x") + s;
}

inline Int from_hex(const std::string& s) {
  bool neg = !s.empty() && s[0] == '-';
  std::string body = s.substr(neg ? 1 : 0);
  if (body.rfind("0x", 0) != 0) throw ParseError("hex integer must start with 0x: '" + s + "'");
  Int v;
  if (body.size() < 3 || v.set_str(body.substr(2), 16) != 0) throw ParseError("bad hex integer: '" + s + "'");
  return neg ? Int(-v) : v;
}

// e^{2 pi i frac(k theta)} to P fractional bits, for each k in `ks`.
inline std::vector<HPComplex> circle_points(const AlgebraicReal& th, const std::vector<Int>& ks, unsigned P) {
  Int kmax = 1;
  for (const auto& k : ks) kmax = std::max(kmax, Int(abs(k)));
  std::size_t b = P + 64 + mpz_sizeinbase(kmax.get_mpz_t(), 2);
  Int m;
  refine(th, b, m);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(b + 64);
  Mpfr theta(prec), t(prec), pi2(prec), s(prec), c(prec);
  mpfr_set_z(theta.get(), m.get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(theta.get(), theta.get(), static_cast<unsigned long>(b), MPFR_RNDN);
  mpfr_const_pi(pi2.get(), MPFR_RNDN);
  mpfr_mul_2ui(pi2.get(), pi2.get(), 1, MPFR_RNDN);
  std::vector<HPComplex> out;
  out.reserve(ks.size());
  for (const auto& k : ks) {
    mpfr_mul_z(t.get(), theta.get(), k.get_mpz_t(), MPFR_RNDN);
    mpfr_frac(t.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), t.get(), pi2.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), t.get(), MPFR_RNDN);
    mpfr_mul_2ui(s.get(), s.get(), P, MPFR_RNDN);
    mpfr_mul_2ui(c.get(), c.get(), P, MPFR_RNDN);
    HPComplex z{Int(0), Int(0), P};
    mpfr_get_z(z.re.get_mpz_t(), c.get(), MPFR_RNDN);
    mpfr_get_z(z.im.get_mpz_t(), s.get(), MPFR_RNDN);
    out.push_back(std::move(z));
  }
  return out;
}

// Floating frac(k theta) for gap statistics.
inline std::vector<long double> circle_fractions(const AlgebraicReal& th, std::size_t count) {
  Int m;
  const std::size_t b = 128;
  refine(th, b, m);
  std::vector<long double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    Int num = m * static_cast<unsigned long>(k);
    mpz_fdiv_r_2exp(num.get_mpz_t(), num.get_mpz_t(), b);
    long e = 0;
    double d = mpz_get_d_2exp(&e, num.get_mpz_t());
    out[k] = std::ldexp(static_cast<long double>(d), static_cast<int>(e - static_cast<long>(b)));
  }
  return out;
}

}  // namespace chs::variants
