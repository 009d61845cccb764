#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "clnode/errors.hpp"
#include "clnode/ring.hpp"

namespace clnode {

/// Power series in x truncated modulo x^{order+1}, with coefficients in the
/// scalar type of Ring (exact rationals, or truncated t-series).
template <class Ring>
class TruncSeries {
 public:
  using RingType = Ring;
  using Scalar = typename Ring::Scalar;

  TruncSeries(Ring ring, int order) : ring_(std::move(ring)), order_(order) {
    if (order < 0) throw OutOfRange("x-truncation order must be >= 0");
    c_.assign(static_cast<size_t>(order) + 1, ring_.zero());
  }

  static TruncSeries one(const Ring& ring, int order) { return constant(ring, order, ring.one()); }
  static TruncSeries constant(const Ring& ring, int order, Scalar c) {
    TruncSeries s(ring, order);
    s.c_[0] = std::move(c);
    return s;
  }
  static TruncSeries monomial(const Ring& ring, int order, Scalar c, int degree) {
    TruncSeries s(ring, order);
    if (degree <= order) s.c_[static_cast<size_t>(degree)] = std::move(c);
    return s;
  }
  static TruncSeries x(const Ring& ring, int order) { return monomial(ring, order, ring.one(), 1); }

  const Ring& ring() const { return ring_; }
  int order() const { return order_; }
  const Scalar& operator[](int n) const { return c_[static_cast<size_t>(n)]; }
  Scalar& operator[](int n) { return c_[static_cast<size_t>(n)]; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  TruncSeries truncated(int order) const {
    TruncSeries r(ring_, order);
    for (int n = 0; n <= std::min(order, order_); ++n) r[n] = (*this)[n];
    return r;
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    align(o);
    for (int n = 0; n <= order_; ++n) (*this)[n] += o[n];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    align(o);
    for (int n = 0; n <= order_; ++n) (*this)[n] -= o[n];
    return *this;
  }
  TruncSeries& operator*=(const Scalar& c) {
    for (auto& a : c_) a = a * c;
    return *this;
  }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const Scalar& c) { return a *= c; }
  friend TruncSeries operator*(const Scalar& c, TruncSeries a) { return a *= c; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(combine(a.ring_, b.ring_), std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; i + j <= r.order_; ++j) {
        if (is_zero(b[j])) continue;
        r[i + j] += a[i] * b[j];
      }
    }
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    combine(a.ring_, b.ring_);
    const int order = std::min(a.order_, b.order_);
    for (int n = 0; n <= order; ++n)
      if (!(a[n] == b[n])) return false;
    return true;
  }

 private:
  void align(const TruncSeries& o) {
    ring_ = combine(ring_, o.ring_);
    if (o.order_ < order_) *this = truncated(o.order_);
  }

  Ring ring_;
  int order_;
  std::vector<Scalar> c_;
};

/// Multiplicative inverse modulo x^{order+1}; the constant term must be a
/// unit of the scalar ring.
template <class Ring>
TruncSeries<Ring> invert(const TruncSeries<Ring>& f) {
  if (!is_invertible(f[0])) throw NotInvertible("series constant term is not invertible");
  TruncSeries<Ring> g(f.ring(), f.order());
  const auto inv0 = inverse(f[0]);
  g[0] = inv0;
  for (int n = 1; n <= f.order(); ++n) {
    auto acc = f.ring().zero();
    for (int k = 1; k <= n; ++k) {
      if (is_zero(f[k])) continue;
      acc += f[k] * g[n - k];
    }
    g[n] = -(acc * inv0);
  }
  return g;
}

template <class Ring>
TruncSeries<Ring> pow(const TruncSeries<Ring>& f, int k) {
  if (k < 0) return pow(invert(f), -k);
  auto r = TruncSeries<Ring>::one(f.ring(), f.order());
  for (int i = 0; i < k; ++i) r *= f;
  return r;
}

// x -> x^m.
template <class Ring>
TruncSeries<Ring> substitute_power(const TruncSeries<Ring>& f, int m) {
  if (m < 1) throw OutOfRange("substitution x -> x^m needs m >= 1");
  TruncSeries<Ring> r(f.ring(), f.order());
  for (int n = 0; n * m <= f.order(); ++n) r[n * m] = f[n];
  return r;
}

// x -> s*x.
template <class Ring>
TruncSeries<Ring> scale_variable(const TruncSeries<Ring>& f, const typename Ring::Scalar& s) {
  TruncSeries<Ring> r = f;
  auto power = f.ring().one();
  for (int n = 1; n <= f.order(); ++n) {
    power = power * s;
    r[n] = r[n] * power;
  }
  return r;
}

// Formal derivative in x, keeping the same order (top coefficient becomes 0).
template <class Ring>
TruncSeries<Ring> derivative(const TruncSeries<Ring>& f) {
  TruncSeries<Ring> r(f.ring(), f.order());
  for (int n = 1; n <= f.order(); ++n) r[n - 1] = f[n] * f.ring().constant(Rational(n));
  return r;
}

/// log f for f with constant term 1.
template <class Ring>
TruncSeries<Ring> log_series(const TruncSeries<Ring>& f) {
  if (!(f[0] == f.ring().one())) throw NotInvertible("log needs constant term 1");
  const auto q = derivative(f) * invert(f);
  TruncSeries<Ring> r(f.ring(), f.order());
  for (int n = 1; n <= f.order(); ++n) r[n] = q[n - 1] * f.ring().constant(frac(1, n));
  return r;
}

/// exp g for g with zero constant term, via n e_n = sum_k k g_k e_{n-k}.
template <class Ring>
TruncSeries<Ring> exp_series(const TruncSeries<Ring>& g) {
  if (!is_zero(g[0])) throw NonConvergent("exp needs zero constant term");
  TruncSeries<Ring> e(g.ring(), g.order());
  e[0] = g.ring().one();
  for (int n = 1; n <= g.order(); ++n) {
    auto acc = g.ring().zero();
    for (int k = 1; k <= n; ++k) {
      if (is_zero(g[k])) continue;
      acc += g[k] * e[n - k] * g.ring().constant(Rational(k));
    }
    e[n] = acc * g.ring().constant(frac(1, n));
  }
  return e;
}

}  // namespace clnode
