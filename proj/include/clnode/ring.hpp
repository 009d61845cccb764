#pragma once

#include <string>

#include "clnode/errors.hpp"
#include "clnode/rational.hpp"
#include "clnode/tseries.hpp"

namespace clnode {

/// Coefficients are exact rationals at a fixed integer q >= 2, with t = 1/q.
struct NumericQ {
  using Scalar = Rational;
  static constexpr bool symbolic = false;

  NumericQ() = default;
  explicit NumericQ(Integer q_) : q(std::move(q_)) {
    if (q < 2) throw OutOfRange("q must be >= 2, got " + q.get_str());
  }

  Integer q{2};

  Scalar zero() const { return Rational(0); }
  Scalar one() const { return Rational(1); }
  Scalar constant(const Rational& c) const { return c; }
  Scalar t() const { return Rational(1) / Rational(q); }
  Scalar t_pow(long e) const { return rpow(t(), e); }

  friend bool operator==(const NumericQ& a, const NumericQ& b) { return a.q == b.q; }
};

/// Coefficients are power series in t = 1/q truncated modulo t^{T+1}.
struct SymbolicT {
  using Scalar = TSeries;
  static constexpr bool symbolic = true;

  SymbolicT() = default;
  explicit SymbolicT(int T_) : T(T_) {
    if (T < 0) throw OutOfRange("T must be >= 0");
  }

  int T = 40;

  Scalar zero() const { return TSeries(T); }
  Scalar one() const { return TSeries::constant(T, 1); }
  Scalar constant(const Rational& c) const { return TSeries::constant(T, c); }
  Scalar t() const { return TSeries::monomial(T, 1, 1); }
  Scalar t_pow(long e) const {
    if (e < 0) throw OutOfRange("negative power of t in symbolic mode");
    return TSeries::monomial(T, 1, static_cast<int>(e));
  }

  friend bool operator==(const SymbolicT& a, const SymbolicT& b) { return a.T == b.T; }
};

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const TSeries& s) { return s.is_zero(); }

inline bool is_invertible(const Rational& r) { return sgn(r) != 0; }
inline bool is_invertible(const TSeries& s) { return sgn(s[0]) != 0; }

inline Rational inverse(const Rational& r) {
  if (sgn(r) == 0) throw NotInvertible("division by zero rational");
  return 1 / r;
}
inline TSeries inverse(const TSeries& s) { return s.inverse(); }

// Ring used for the result of a binary operation.
inline NumericQ combine(const NumericQ& a, const NumericQ& b) {
  if (!(a == b)) throw ModeMismatch("numeric series at different q (" + a.q.get_str() + " vs " + b.q.get_str() + ")");
  return a;
}
inline SymbolicT combine(const SymbolicT& a, const SymbolicT& b) { return a.T <= b.T ? a : b; }

inline std::string mode_name(const NumericQ&) { return "numeric"; }
inline std::string mode_name(const SymbolicT&) { return "symbolic"; }

}  // namespace clnode
