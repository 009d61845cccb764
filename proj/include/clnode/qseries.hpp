#pragma once

#include <functional>

#include "clnode/errors.hpp"
#include "clnode/trunc_series.hpp"

namespace clnode {

inline Rational unit_like(const Rational&) { return Rational(1); }
inline TSeries unit_like(const TSeries& s) { return TSeries::constant(s.order(), 1); }
template <class Ring>
TruncSeries<Ring> unit_like(const TruncSeries<Ring>& f) {
  return TruncSeries<Ring>::one(f.ring(), f.order());
}

/// (a;q)_n = (1-a)(1-qa)...(1-q^{n-1}a). The value a may be a scalar or a
/// series in x; qv is always a scalar.
template <class V, class S>
V pochhammer_fin(const V& a, const S& qv, int n) {
  if (n < 0) throw OutOfRange("Pochhammer length must be >= 0");
  V r = unit_like(a);
  S qi = unit_like(qv);
  for (int i = 0; i < n; ++i) {
    V factor = unit_like(a) - a * qi;
    r = r * factor;
    qi = qi * qv;
  }
  return r;
}

/// (a;q)_inf for a t-series a and qv with val_t(qv) >= 1. Factor i changes
/// only t-degrees >= i*val(qv) + val(a), so the product stops at the first
/// such index past T.
TSeries pochhammer_inf(const TSeries& a, const TSeries& qv);

/// Smallest t-valuation over all x-coefficients; empty for the zero series.
std::optional<int> min_valuation(const TruncSeries<SymbolicT>& f);

/// Index of the first factor of (a;q)_inf that cannot touch coefficients
/// below t^{T+1}: factor i has t-valuation >= i*vq + va.
inline int pochhammer_stop_index(int va, int vq, int T) {
  return va > T ? 0 : (T - va) / vq + 1;
}

namespace detail {

// f *= (1 - c x^d), in place, for a single-term factor.
template <class Ring>
void multiply_binomial(TruncSeries<Ring>& f, const typename Ring::Scalar& c, int d) {
  for (int n = f.order(); n >= d; --n) {
    if (is_zero(f[n - d])) continue;
    f[n] -= c * f[n - d];
  }
}

// If f = c x^d with a single nonzero coefficient, return d.
template <class Ring>
std::optional<int> single_term_degree(const TruncSeries<Ring>& f) {
  std::optional<int> d;
  for (int n = 0; n <= f.order(); ++n) {
    if (is_zero(f[n])) continue;
    if (d) return std::nullopt;
    d = n;
  }
  return d;
}

}  // namespace detail

/// (a;q)_inf for a series a in x, truncated exactly to the working order.
///
/// Symbolic mode multiplies factors until the stopping index. Numeric mode
/// requires a(0) = 0 and |q| < 1 and expands through Euler's exact sum
/// sum_n (-1)^n q^{n(n-1)/2} a^n / (q;q)_n, which terminates at n = N because
/// a^n lies in x^n. Any other input raises NonConvergent.
template <class Ring>
TruncSeries<Ring> pochhammer_inf(const TruncSeries<Ring>& a, const typename Ring::Scalar& qv) {
  const int N = a.order();
  const Ring& ring = a.ring();
  if constexpr (Ring::symbolic) {
    const auto va = min_valuation(a);
    if (!va) return TruncSeries<Ring>::one(ring, N);
    const auto vq = qv.valuation();
    if (!vq || *vq < 1) {
      if (qv.is_zero()) return TruncSeries<Ring>::one(ring, N) - a;
      throw NonConvergent("(a;q)_inf in symbolic mode needs val_t(q) >= 1");
    }
    const int stop = pochhammer_stop_index(*va, *vq, ring.T);
    auto r = TruncSeries<Ring>::one(ring, N);
    const auto single = detail::single_term_degree(a);
    auto qi = ring.one();
    for (int i = 0; i < stop; ++i) {
      if (single) {
        detail::multiply_binomial(r, a[*single] * qi, *single);
      } else {
        r = r * (TruncSeries<Ring>::one(ring, N) - a * qi);
      }
      qi = qi * qv;
    }
    return r;
  } else {
    if (!is_zero(a[0]))
      throw NonConvergent("(a;q)_inf in numeric mode needs a with zero constant term");
    if (abs(qv) >= 1) throw NonConvergent("(a;q)_inf in numeric mode needs |q| < 1");
    auto r = TruncSeries<Ring>::one(ring, N);
    const auto single = detail::single_term_degree(a);
    auto a_pow = TruncSeries<Ring>::one(ring, N);
    Rational qq = 1;  // (q;q)_n
    Rational c_pow = 1;
    for (int n = 1; n <= N; ++n) {
      qq *= 1 - rpow(qv, n);
      const Rational coeff = ((n % 2) ? -1 : 1) * rpow(qv, static_cast<long>(n) * (n - 1) / 2) / qq;
      if (single) {
        c_pow *= a[*single];
        if (static_cast<long>(n) * *single > N) break;
        r[n * *single] += c_pow * coeff;
      } else {
        a_pow = a_pow * a;
        r += a_pow * coeff;
      }
    }
    return r;
  }
}

/// Gaussian binomial [n,k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}), evaluated as
/// prod_{i<k} (1 - q^{n-i}) / (1 - q^{i+1}). Symbolic results are checked to
/// be polynomials of the expected degree when q is a monomial in t.
template <class S>
S q_binomial(int n, int k, const S& qv) {
  if (n < 0 || k < 0) throw OutOfRange("q_binomial needs n, k >= 0");
  if (k > n) throw OutOfRange("q_binomial needs k <= n");
  const S one = unit_like(qv);
  S num = one;
  S den = one;
  const int kk = std::min(k, n - k);
  for (int i = 0; i < kk; ++i) {
    S p1 = one, p2 = one;
    for (int j = 0; j < n - i; ++j) p1 = p1 * qv;
    for (int j = 0; j < i + 1; ++j) p2 = p2 * qv;
    num = num * (one - p1);
    den = den * (one - p2);
  }
  S r = num * inverse(den);
  if constexpr (std::is_same_v<S, TSeries>) {
    const auto vq = qv.valuation();
    bool monomial = vq.has_value();
    if (monomial)
      for (int j = *vq + 1; j <= qv.order(); ++j)
        if (sgn(qv[j]) != 0) monomial = false;
    if (monomial) {
      const long degree = static_cast<long>(*vq) * kk * (n - kk);
      for (long j = degree + 1; j <= r.order(); ++j)
        if (sgn(r[static_cast<int>(j)]) != 0)
          throw Error("q_binomial: nonzero coefficient past the polynomial degree");
    }
  }
  return r;
}

/// Sum_k x^{2k} t^{k^2} / (t;t)_k * (x t^{k+1}; t)_inf, truncated at x^N.
/// Only k <= N/2 contribute; in symbolic mode k^2 > T contributes nothing.
template <class Ring>
TruncSeries<Ring> series_H(int N, const Ring& ring) {
  TruncSeries<Ring> h(ring, N);
  const auto t = ring.t();
  auto tt_k = ring.one();  // (t;t)_k
  for (int k = 0; 2 * k <= N; ++k) {
    if (k > 0) tt_k = tt_k * (ring.one() - ring.t_pow(k));
    if constexpr (Ring::symbolic) {
      if (static_cast<long>(k) * k > ring.T) break;
    }
    auto a = TruncSeries<Ring>::monomial(ring, N, ring.t_pow(k + 1), 1);
    auto tail = pochhammer_inf(a, t);
    const typename Ring::Scalar scale = ring.t_pow(static_cast<long>(k) * k) * inverse(tt_k);
    for (int n = 0; n + 2 * k <= N; ++n) {
      if (is_zero(tail[n])) continue;
      h[n + 2 * k] += tail[n] * scale;
    }
  }
  return h;
}

/// Sum_n sum_{k<=n} [n,k]_t / (t;t)_k x^n.
template <class Ring>
TruncSeries<Ring> series_Zhat_node_global(int N, const Ring& ring) {
  TruncSeries<Ring> z(ring, N);
  const auto t = ring.t();
  for (int n = 0; n <= N; ++n) {
    auto acc = ring.zero();
    for (int k = 0; k <= n; ++k) acc += q_binomial(n, k, t) * inverse(pochhammer_fin(t, t, k));
    z[n] = acc;
  }
  return z;
}

/// (x;t)_inf^{-2} H(x;t), the factorized side of the mutually annihilating count.
template <class Ring>
TruncSeries<Ring> series_node_factorized(int N, const Ring& ring) {
  const auto inv = invert(pochhammer_inf(TruncSeries<Ring>::x(ring, N), ring.t()));
  return inv * inv * series_H(N, ring);
}

/// (xt;t)_inf^{-2} H(x;t).
template <class Ring>
TruncSeries<Ring> series_Zhat_node_local(int N, const Ring& ring) {
  const auto a = TruncSeries<Ring>::monomial(ring, N, ring.t(), 1);
  const auto inv = invert(pochhammer_inf(a, ring.t()));
  return inv * inv * series_H(N, ring);
}

/// prod_{i>=1} (1 - t^i x)^{-1}.
template <class Ring>
TruncSeries<Ring> series_Zhat_smooth_local(int N, const Ring& ring) {
  return invert(pochhammer_inf(TruncSeries<Ring>::monomial(ring, N, ring.t(), 1), ring.t()));
}

/// prod_{i,j>=1} (1 - t^j x^i)^{-1}; factors with i > N are 1.
template <class Ring>
TruncSeries<Ring> series_Zhat_plane_local(int N, const Ring& ring) {
  auto r = TruncSeries<Ring>::one(ring, N);
  for (int i = 1; i <= N; ++i)
    r = r * invert(pochhammer_inf(TruncSeries<Ring>::monomial(ring, N, ring.t(), i), ring.t()));
  return r;
}

/// Partial theta function sum_n t^{n^2} x^n.
template <class Ring>
TruncSeries<Ring> series_theta_partial(int N, const Ring& ring) {
  TruncSeries<Ring> r(ring, N);
  for (int n = 0; n <= N; ++n) {
    if constexpr (Ring::symbolic) {
      if (static_cast<long>(n) * n > ring.T) continue;
    }
    r[n] = ring.t_pow(static_cast<long>(n) * n);
  }
  return r;
}

/// Sum of sign^n a_n(t) over n <= N, trusted modulo t^{T+1} only after
/// checking val_t(a_n) >= bound(n) for every n <= N and T < bound(N+1).
TSeries evaluate_at_unit(const TruncSeries<SymbolicT>& f, int sign, const std::function<int(int)>& bound);

/// H(sign; t) mod t^{T+1}, summed term by term: the k-th term has
/// valuation >= k^2, so k stops at the first k with k^2 > T.
TSeries H_at_unit(int sign, int T);

/// t^{i^2} H(t^{-i}; t) mod t^{T+1}. Terms k < i vanish; the k-th
/// remaining term has valuation (k - i)^2.
TSeries H_at_inverse_power(int i, int T);

}  // namespace clnode
