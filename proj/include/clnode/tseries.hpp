#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clnode/rational.hpp"

namespace clnode {

/// Power series in t with exact rational coefficients, truncated modulo
/// t^{order+1}. Binary operations on mismatched orders truncate to the
/// smaller order.
class TSeries {
 public:
  TSeries() = default;
  explicit TSeries(int order);
  TSeries(int order, std::vector<Rational> coeffs);

  static TSeries constant(int order, const Rational& c);
  static TSeries monomial(int order, const Rational& c, int exponent);

  int order() const { return order_; }
  const Rational& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  Rational& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  // Lowest exponent with a nonzero coefficient; empty for the zero series.
  std::optional<int> valuation() const;
  TSeries truncated(int order) const;

  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(const TSeries& o);
  TSeries& operator*=(const Rational& c);
  TSeries operator-() const;

  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  friend TSeries operator*(TSeries a, const Rational& c) { return a *= c; }
  friend TSeries operator*(const Rational& c, TSeries a) { return a *= c; }
  friend bool operator==(const TSeries& a, const TSeries& b);

  // Multiply by t^k (k >= 0), dropping terms past the order.
  TSeries shifted(int k) const;
  // Inverse modulo t^{order+1}; throws NotInvertible if the constant term is 0.
  TSeries inverse() const;
  // Substitute t -> t^m.
  TSeries substitute_power(int m) const;

  std::string str() const;

 private:
  int order_ = 0;
  std::vector<Rational> c_{Rational(0)};
};

}  // namespace clnode
