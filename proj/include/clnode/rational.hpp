#pragma once

#include <gmpxx.h>

#include <string>

namespace clnode {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

// base^exponent for any sign of exponent; base must be nonzero when exponent < 0.
inline Rational rpow(const Rational& base, long exponent) {
  Rational r;
  const unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                       : static_cast<unsigned long>(exponent);
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num_mpz_t(), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den_mpz_t(), e);
  r.canonicalize();
  if (exponent < 0) r = 1 / r;
  return r;
}

inline Rational frac(long num, long den) {
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace clnode
