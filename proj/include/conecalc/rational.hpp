#pragma once

// Exact scalars. Everything exact in the library is an mpq_class; this header
// collects the few integer/rational helpers that gmpxx does not spell out.
//
// Beware of gmpxx expression templates: never bind an arithmetic expression to
// `auto`, always name the type.

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "conecalc/error.hpp"

namespace conecalc {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error(Errc::SyntaxError, "not a rational number: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return out;
}

inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// (2m-1)!! with the convention (-1)!! = 1.
inline Integer odd_double_factorial(unsigned long two_m) {
  Integer r = 1;
  for (unsigned long j = 1; j + 1 <= two_m; j += 2) r *= j;
  return r;
}

}  // namespace conecalc
