#include "clnode/analytic.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <thread>

#include "clnode/errors.hpp"
#include "clnode/qseries.hpp"

namespace clnode {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_t(const Real& t) {
  if (!(t.sign() > 0 && t < Real(1L, t.prec())))
    throw NonConvergent("t must lie strictly between 0 and 1, got " + t.str(10));
}

// Unit roundoff at precision p.
Real unit(mpfr_prec_t p) { return ulp_scale(p, static_cast<long>(p) - 1); }

// Smallest J >= 0 with c t^J <= delta, for c >= 0, 0 < t < 1, delta > 0.
int factors_needed(const Real& c, const Real& t, const Real& delta) {
  if (c <= delta) return 0;
  const double est = (log(delta) - log(c)).to_double() / log(t).to_double();
  int J = std::max(0, static_cast<int>(std::floor(est)) - 1);
  while (c * pow(t, J) > delta) ++J;
  return J;
}

// A lower bound for (t;t)_inf: the partial product times 1 - t^{J+1}/(1-t),
// less a rounding allowance.
Real tt_inf_lower(const Real& t) {
  const mpfr_prec_t p = t.prec();
  const Real one(1L, p);
  const Real eps = ulp_scale(p, 30);
  const int J = factors_needed(t / (one - t), t, eps);
  Real prod = one, tj = one;
  for (int j = 1; j <= J; ++j) {
    tj *= t;
    prod *= one - tj;
  }
  const Real slack = Real(static_cast<long>(4 * J + 8), p) * unit(p);
  return prod * (one - eps) * (one - slack);
}

// Padding applied to every computed bound, for rounding inside the bound itself.
Real pad(const Real& b) { return b * (Real(1L, b.prec()) + ulp_scale(b.prec(), 20)); }

void check_rounding(const Real& rounding, const Real& target, const char* what) {
  if (rounding > ldexp(target, -2))
    throw PrecisionExhausted(std::string(what) + ": working precision cannot certify target " + target.str(6));
}

}  // namespace

EntireEval eval_pochhammer(const Complex& a, const Real& t, const Real& target) {
  check_t(t);
  const mpfr_prec_t p = t.prec();
  const Real one(1L, p), u = unit(p);
  const Real m = abs(a);
  const Real cap = exp(m / (one - t));  // bounds every partial product
  Real delta = target / (Real(4L, p) * cap);
  if (delta > Real(0.5, p)) delta = Real(0.5, p);
  const int J = factors_needed(m / (one - t), t, delta);
  Complex prod(one);
  Real tj = one;
  for (int j = 0; j < J; ++j) {
    prod *= Complex(one) - a * tj;
    tj *= t;
  }
  const Real mag = abs(prod);
  const Real trunc = mag * (exp(m * tj / (one - t)) - one);
  const Real rounding = mag * Real(static_cast<long>(6 * J + 6), p) * u;
  check_rounding(rounding, target, "eval_pochhammer");
  return EntireEval{prod, pad(trunc + rounding), 1, J};
}

EntireEval eval_H(const Complex& x, const Real& t, const Real& target) {
  check_t(t);
  const mpfr_prec_t p = t.prec();
  const Real one(1L, p), u = unit(p), half(0.5, p);
  const Real M = abs(x);
  if (M.is_zero()) return EntireEval{Complex(one), Real(p), 1, 0};

  const Real C = one / tt_inf_lower(t);
  const Real P = exp(M * t / (one - t));
  const Real M2 = M * M;
  // majorants m_k = t^{k^2} M^{2k} C P with ratio t^{2k+1} M^2
  std::vector<Real> majorant{C * P};
  int K = 0;
  for (;;) {
    const Real ratio = pow(t, 2L * K + 1) * M2;
    const Real& mk = majorant.back();
    if (ratio <= half && ldexp(mk, 1) <= ldexp(target, -1)) break;
    majorant.push_back(mk * ratio);
    ++K;
  }
  const Real tail = ldexp(majorant.back(), 1);

  Complex value(p);
  Real trunc(p), rounding(p);
  const Complex x2 = x * x;
  Complex x2k(one);
  Real tk2 = one, ttk = one;  // t^{k^2}, (t;t)_k
  int max_factors = 0;
  for (int k = 0; k < K; ++k) {
    if (k > 0) {
      x2k *= x2;
      tk2 *= pow(t, 2L * k - 1);
      ttk *= one - pow(t, k);
    }
    const Complex coef = x2k * (tk2 / ttk);
    const Complex y = x * pow(t, k + 1L);
    const Real my = abs(y);
    Real delta = target / (Real(8L * K, p) * majorant[static_cast<size_t>(k)]);
    if (delta > half) delta = half;
    const int J = factors_needed(my / (one - t), t, delta);
    max_factors = std::max(max_factors, J);
    Complex prod(one);
    Real tj = one;
    for (int j = 0; j < J; ++j) {
      prod *= Complex(one) - y * tj;
      tj *= t;
    }
    const Complex term = coef * prod;
    value += term;
    const Real mag = abs(term);
    trunc += mag * (exp(my * tj / (one - t)) - one);
    rounding += mag * Real(static_cast<long>(6 * (J + k) + 10), p) * u;
  }
  rounding += abs(value) * Real(8L, p) * u;
  check_rounding(rounding, target, "eval_H");
  return EntireEval{value, pad(tail + trunc + rounding), K, max_factors};
}

EntireEval eval_H_at_inverse_power(int i, const Real& t_in, const Real& target) {
  check_t(t_in);
  if (i < 0) throw OutOfRange("inverse power index must be >= 0");
  // guard bits for the factor t^{-i^2}
  const double scale_bits = -static_cast<double>(i) * i * std::log2(t_in.to_double());
  const mpfr_prec_t p = t_in.prec() + static_cast<mpfr_prec_t>(scale_bits) + 16;
  const Real t(t_in, p);
  const Real one(1L, p), u = unit(p), half(0.5, p);
  const Real L = tt_inf_lower(t);
  const Real scale = pow(t, -static_cast<long>(i) * i);  // t^{-i^2}
  // S = sum_m t^{m^2} / ((t;t)_m (t;t)_{m+i}); terms <= t^{m^2} / L^2
  const Real s_cap = one / (L * L) * Real(2L, p);
  const Real s_target = target / (Real(4L, p) * scale);
  int K = 0;
  Real bound_k = one / (L * L);
  while (!(pow(t, 2L * K + 1) <= half && ldexp(bound_k, 1) <= s_target)) {
    bound_k *= pow(t, 2L * K + 1);
    ++K;
  }
  Real S(p), ttm = one, ttmi = one;
  for (int j = 1; j <= i; ++j) ttmi *= one - pow(t, j);
  for (int m = 0; m < K; ++m) {
    if (m > 0) {
      ttm *= one - pow(t, m);
      ttmi *= one - pow(t, m + i);
    }
    S += pow(t, static_cast<long>(m) * m) / (ttm * ttmi);
  }
  const Real eS = ldexp(bound_k, 1) + S * Real(static_cast<long>(6 * K + 2 * i + 10), p) * u;
  const auto pinf = eval_pochhammer(Complex(t), t, target / (Real(4L, p) * scale * s_cap));
  const Real P = pinf.value.re;
  Real bound = scale * (abs(P) * eS + (S + eS) * pinf.error_bound);
  const Real value = scale * P * S;
  const Real rounding = abs(value) * Real(8L, p) * u;
  check_rounding(rounding, target, "eval_H_at_inverse_power");
  return EntireEval{Complex(value), pad(bound + rounding), K, pinf.max_factors};
}

EntireEval eval_theta(const Complex& x, const Real& t, const Real& target) {
  check_t(t);
  const mpfr_prec_t p = t.prec();
  const Real one(1L, p), u = unit(p), half(0.5, p);
  const Real M = abs(x);
  Complex value(p), xn(one);
  Real rounding(p);
  int n = 0;
  for (;; ++n) {
    const Real tn2 = pow(t, static_cast<long>(n) * n);
    const Real mag = tn2 * pow(M, n);
    if (pow(t, 2L * n + 1) * M <= half && ldexp(mag, 1) <= ldexp(target, -1)) {
      const Real tail = ldexp(mag, 1);
      rounding += abs(value) * Real(4L, p) * u;
      check_rounding(rounding, target, "eval_theta");
      return EntireEval{value, pad(tail + rounding), n, 0};
    }
    value += xn * tn2;
    rounding += mag * Real(static_cast<long>(4 * n + 8), p) * u;
    xn *= x;
  }
}

EntireEval eval_F(const Complex& y, const Real& t, const Real& target) {
  const Complex s = sqrt(y);
  const auto a = eval_H(s, t, target), b = eval_H(-s, t, target);
  const Real half(0.5, t.prec());
  return EntireEval{(a.value + b.value) * half, pad((a.error_bound + b.error_bound) * half),
                    std::max(a.terms_used, b.terms_used), std::max(a.max_factors, b.max_factors)};
}

EntireEval eval_G(const Complex& y, const Real& t, const Real& target) {
  const Complex s = sqrt(y);
  const Real ms = abs(s);
  if (ms.is_zero()) {
    const Real a1 = h_coefficient(1, t);
    return EntireEval{Complex(a1), pad(abs(a1) * Real(16L, t.prec()) * unit(t.prec())), 1, 0};
  }
  const Real inner = ms < Real(1L, t.prec()) ? target * ms : target;
  const auto a = eval_H(s, t, inner), b = eval_H(-s, t, inner);
  const Complex two_s = s * Real(2L, t.prec());
  return EntireEval{(a.value - b.value) / two_s, pad((a.error_bound + b.error_bound) / ldexp(ms, 1)),
                    std::max(a.terms_used, b.terms_used), std::max(a.max_factors, b.max_factors)};
}

EntireEval eval_Zhat_node_local(const Complex& x, const Real& t, const Real& target) {
  const mpfr_prec_t p = t.prec();
  Real inner = ldexp(target, -8);
  for (int attempt = 0; attempt < 6; ++attempt, inner = ldexp(inner, -16)) {
    const auto h = eval_H(x, t, inner);
    const auto b = eval_pochhammer(x * t, t, inner);
    const Real mb = abs(b.value);
    const Real lower = mb - b.error_bound;
    if (lower.sign() <= 0) throw NotInvertible("(xt;t)_inf vanishes within its error bound");
    const Complex b2 = b.value * b.value;
    const Complex value = h.value / b2;
    // |A/B^2 - a/b^2| <= eA/|B|^2 + |a| eB (2|b| + eB) / (|B|^2 |b|^2)
    const Real bound = h.error_bound / (lower * lower) +
                       abs(h.value) * b.error_bound * (ldexp(mb, 1) + b.error_bound) / (lower * lower * mb * mb) +
                       abs(value) * Real(16L, p) * unit(p);
    if (bound <= target) return EntireEval{value, pad(bound), h.terms_used, std::max(h.max_factors, b.max_factors)};
  }
  throw PrecisionExhausted("eval_Zhat_node_local: could not reach target " + target.str(6));
}

namespace {

template <class S>
S h_coefficient_impl(int n, const S& t, const S& one, S (*power)(const S&, long)) {
  if (n < 0) throw OutOfRange("coefficient index must be >= 0");
  S total = one - one;
  std::vector<S> tt{one};  // (t;t)_j
  for (int j = 1; j <= n; ++j) tt.push_back(tt.back() * (one - power(t, j)));
  for (int k = 0; 2 * k <= n; ++k) {
    const int m = n - 2 * k;
    const long e = static_cast<long>(k) * k + static_cast<long>(k + 1) * m + static_cast<long>(m) * (m - 1) / 2;
    S term = power(t, e) / (tt[static_cast<size_t>(k)] * tt[static_cast<size_t>(m)]);
    if (m % 2) term = -term;
    total = total + term;
  }
  return total;
}

Real real_power(const Real& t, long e) { return pow(t, e); }
Rational rational_power(const Rational& t, long e) { return rpow(t, e); }

}  // namespace

Real h_coefficient(int n, const Real& t) { return h_coefficient_impl<Real>(n, t, Real(1L, t.prec()), real_power); }

Rational h_coefficient(int n, const Rational& t) {
  return h_coefficient_impl<Rational>(n, t, Rational(1), rational_power);
}

namespace {

// Deterministic uniform double in [0, 1) from the raw generator output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Runs fn(i) for i in [0, n) on `workers` threads; each index is independent.
template <class Fn>
void parallel_for(int n, int workers, Fn fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// sup over |z| = R of |H(z)|, bounded by C exp(R t/(1-t)) sum_k t^{k^2} R^{2k}.
Real max_modulus_bound(const Real& R, const Real& t) {
  const mpfr_prec_t p = t.prec();
  const Real one(1L, p), half(0.5, p);
  const Real C = one / tt_inf_lower(t);
  const Real R2 = R * R;
  Real sum(p), term = one;
  for (int k = 0;; ++k) {
    sum += term;
    const Real ratio = pow(t, 2L * k + 1) * R2;
    const Real next = term * ratio;
    if (ratio <= half && next <= ldexp(sum, -40)) {
      sum += ldexp(next, 1);
      break;
    }
    term = next;
  }
  return pad(C * exp(R * t / (one - t)) * sum);
}

// Best Cauchy bound on sum_{n>N} |a_n| r^n over a grid of radii R > r.
Real maclaurin_tail(const Real& r, const Real& t, int N) {
  const mpfr_prec_t p = t.prec();
  if (r.is_zero()) return Real(p);
  const Real one(1L, p);
  std::optional<Real> best;
  for (int s = 1; s <= 120; ++s) {
    const Real R = r * exp(Real(0.05 * s, p)) + Real(0.01 * s, p);
    const Real rho = r / R;
    const Real b = max_modulus_bound(R, t) * pow(rho, N + 1L) / (one - rho);
    if (!best || b < *best) best = b;
  }
  return pad(*best);
}

}  // namespace

std::vector<Complex> sample_disc(const Real& radius, int count, unsigned seed) {
  const mpfr_prec_t p = radius.prec();
  std::vector<Complex> xs;
  if (count >= 1) xs.emplace_back(Real(p), Real(p));
  if (count >= 2) xs.emplace_back(radius, Real(p));
  std::mt19937_64 rng(seed);
  while (static_cast<int>(xs.size()) < count) {
    const double r = std::sqrt(uniform01(rng)), th = 2 * kPi * uniform01(rng);
    xs.emplace_back(radius * Real(r * std::cos(th), p), radius * Real(r * std::sin(th), p));
  }
  return xs;
}

std::vector<MaclaurinRow> maclaurin_vs_analytic(int q, const std::vector<Complex>& xs, int N, const Real& target,
                                                int workers) {
  if (q < 2) throw OutOfRange("q must be >= 2");
  const mpfr_prec_t p = target.prec();
  const Real t = Real(1L, p) / Real(static_cast<long>(q), p);
  const auto series = series_H(N, NumericQ(q));
  std::vector<Real> coeffs;
  for (int n = 0; n <= N; ++n) coeffs.emplace_back(series[n], p);
  std::vector<MaclaurinRow> rows(xs.size());
  parallel_for(static_cast<int>(xs.size()), workers, [&](int idx) {
    const Complex& x = xs[static_cast<size_t>(idx)];
    MaclaurinRow row{x, Complex(p), Complex(p), Real(p), Real(p), Real(p), Real(p), false};
    const auto ev = eval_H(x, t, target);
    row.analytic = ev.value;
    row.analytic_bound = ev.error_bound;
    Complex acc(p);
    Real absum(p);
    const Real r = abs(x);
    for (int n = N; n >= 0; --n) {
      acc = acc * x + Complex(coeffs[static_cast<size_t>(n)]);
      absum += abs(coeffs[static_cast<size_t>(n)]) * pow(r, n);
    }
    row.polynomial = acc;
    row.rounding_bound = pad(absum * Real(static_cast<long>(4 * N + 8), p) * unit(p));
    row.tail_bound = maclaurin_tail(r, t, N);
    row.difference = abs(row.analytic - row.polynomial);
    row.pass = row.difference <= row.analytic_bound + row.tail_bound + row.rounding_bound;
    rows[static_cast<size_t>(idx)] = std::move(row);
  });
  return rows;
}

ThetaResidual theta_functional_residual(const Complex& x, const Real& t, const Real& target) {
  const mpfr_prec_t p = t.prec();
  const auto a = eval_theta(x, t, target);
  const auto b = eval_theta(x * (t * t), t, target);
  const Complex r = a.value - b.value * x * t - Complex(Real(1L, p));
  const Real bound = a.error_bound + b.error_bound * t * abs(x) + abs(a.value) * Real(16L, p) * unit(p);
  return ThetaResidual{x, t, abs(r), pad(bound)};
}

std::vector<ThetaResidual> theta_residual_samples(int count, unsigned seed, mpfr_prec_t prec, const Real& target,
                                                  int workers) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Complex, Real>> pts;
  for (int i = 0; i < count; ++i) {
    const double tv = 0.05 + 0.9 * uniform01(rng);
    const double r = 3 * std::sqrt(uniform01(rng)), th = 2 * kPi * uniform01(rng);
    pts.emplace_back(Complex(Real(r * std::cos(th), prec), Real(r * std::sin(th), prec)), Real(tv, prec));
  }
  std::vector<ThetaResidual> out(pts.size(), ThetaResidual{Complex(prec), Real(prec), Real(prec), Real(prec)});
  parallel_for(count, workers, [&](int i) {
    out[static_cast<size_t>(i)] =
        theta_functional_residual(pts[static_cast<size_t>(i)].first, pts[static_cast<size_t>(i)].second, target);
  });
  return out;
}

std::vector<PositivityRow> positivity_at(const Real& t, const std::vector<Real>& xs, const Real& target) {
  std::vector<PositivityRow> rows;
  for (const auto& x : xs) {
    const auto ev = eval_H(Complex(x), t, target);
    rows.push_back(PositivityRow{"grid", 0, x, ev.value.re, ev.error_bound, (ev.value.re - ev.error_bound).sign() > 0});
  }
  return rows;
}

std::vector<PositivityRow> positivity_scan(const Real& t, int i_max, int grid, const Real& target) {
  check_t(t);
  const mpfr_prec_t p = t.prec();
  const Real inv_t = Real(1L, p) / t;
  std::vector<Real> xs{Real(p)};
  for (int j = 1; j <= grid; ++j) xs.push_back(inv_t * Real(static_cast<long>(j), p) / Real(static_cast<long>(grid + 1), p));
  auto rows = positivity_at(t, xs, target);
  for (int i = 1; i <= i_max; ++i) {
    const auto ev = eval_H_at_inverse_power(i, t, target);
    rows.push_back(PositivityRow{"inverse-power", i, pow(t, -static_cast<long>(i)), ev.value.re, ev.error_bound,
                                 (ev.value.re - ev.error_bound).sign() > 0});
  }
  return rows;
}

std::vector<ValuationRow> coefficient_valuation_scan(int N, int T) {
  if (N < 0) throw OutOfRange("N must be >= 0");
  const int need = (N * N + 3) / 4;
  if (T <= need)
    throw TruncationTooLow("valuation scan to n=" + std::to_string(N) + " needs T > " + std::to_string(need) +
                           ", got T=" + std::to_string(T));
  const auto h = series_H(N, SymbolicT(T));
  std::vector<ValuationRow> rows;
  for (int n = 0; n <= N; ++n) {
    ValuationRow row;
    row.n = n;
    row.expected = (n * n + 3) / 4;
    row.valuation = h[n].valuation();
    if (row.valuation) row.sign = sgn(h[n][*row.valuation]);
    row.match = row.valuation && *row.valuation == row.expected && row.sign == (n % 2 ? -1 : 1);
    rows.push_back(row);
  }
  return rows;
}

TraceTarget trace_target_from_string(const std::string& s) {
  if (s == "F") return TraceTarget::F;
  if (s == "G") return TraceTarget::G;
  if (s == "Theta" || s == "theta") return TraceTarget::Theta;
  throw OutOfRange("unknown trace target '" + s + "'");
}

std::string to_string(TraceTarget t) {
  switch (t) {
    case TraceTarget::F: return "F";
    case TraceTarget::G: return "G";
    case TraceTarget::Theta: return "Theta";
  }
  return "F";
}

SmoothnessTrace smoothness_trace(TraceTarget target, const Real& t, int n_max) {
  check_t(t);
  if (n_max < 0) throw OutOfRange("n_max must be >= 0");
  const mpfr_prec_t p = t.prec();
  SmoothnessTrace tr{target, t, {}, {}};
  for (int n = 0; n <= n_max; ++n) {
    switch (target) {
      case TraceTarget::F: tr.coefficients.push_back(h_coefficient(2 * n, t)); break;
      case TraceTarget::G: tr.coefficients.push_back(h_coefficient(2 * n + 1, t)); break;
      case TraceTarget::Theta: tr.coefficients.push_back(pow(t, static_cast<long>(n) * n)); break;
    }
  }
  const Real t2 = t * t;
  for (int n = 1; n + 1 <= n_max; ++n) {
    const Real& a = tr.coefficients[static_cast<size_t>(n)];
    const Real den = tr.coefficients[static_cast<size_t>(n - 1)] * tr.coefficients[static_cast<size_t>(n + 1)];
    TraceRow row{n, false, Real(p), Real(p), Real(p)};
    if (!den.is_zero() && !a.is_zero()) {
      row.defined = true;
      row.ratio = a * a / den;
      row.reciprocal = den / (a * a);
      row.distance = abs(row.reciprocal - t2);
    }
    tr.rows.push_back(std::move(row));
  }
  return tr;
}

RootTarget root_target_from_string(const std::string& s) {
  if (s == "H") return RootTarget::H;
  if (s == "F") return RootTarget::F;
  if (s == "G") return RootTarget::G;
  throw OutOfRange("unknown root target '" + s + "'");
}

namespace {

struct Sample {
  Complex z;
  Complex f;
  bool certain;  // |f| exceeds its error bound
};

struct Evaluator {
  RootTarget target;
  const Real& t;
  Real inner;

  Sample operator()(const Complex& z) const {
    EntireEval ev = target == RootTarget::H ? eval_H(z, t, inner)
                    : target == RootTarget::F ? eval_F(z, t, inner)
                                              : eval_G(z, t, inner);
    const bool certain = abs(ev.value) > ev.error_bound;
    return Sample{z, ev.value, certain};
  }
};

double principal(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a < -kPi) a += 2 * kPi;
  return a;
}

// Argument change of f along the segment, refined until steps are small.
std::optional<double> segment_winding(const Evaluator& f, const Sample& a, const Sample& b, int depth) {
  if (!a.certain || !b.certain) return std::nullopt;
  const double d = principal(arg(b.f).to_double() - arg(a.f).to_double());
  if (std::fabs(d) < kPi / 4 || depth == 0) return d;
  const Real half(0.5, a.z.prec());
  const Sample m = f((a.z + b.z) * half);
  auto l = segment_winding(f, a, m, depth - 1);
  auto r = segment_winding(f, m, b, depth - 1);
  if (!l || !r) return std::nullopt;
  return *l + *r;
}

std::optional<int> winding(const Evaluator& f, const Real& x0, const Real& x1, const Real& y0, const Real& y1) {
  const std::vector<Complex> corners{Complex(x0, y0), Complex(x1, y0), Complex(x1, y1), Complex(x0, y1)};
  const int per_edge = 8;
  std::vector<Sample> path;
  for (int e = 0; e < 4; ++e) {
    const Complex& a = corners[static_cast<size_t>(e)];
    const Complex& b = corners[static_cast<size_t>((e + 1) % 4)];
    for (int s = 0; s < per_edge; ++s) {
      const Real w(static_cast<double>(s) / per_edge, x0.prec());
      path.push_back(f(a + (b - a) * w));
    }
  }
  double total = 0;
  for (size_t i = 0; i < path.size(); ++i) {
    auto d = segment_winding(f, path[i], path[(i + 1) % path.size()], 10);
    if (!d) return std::nullopt;
    total += *d;
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

void refine_cell(const Evaluator& f, const Real& x0, const Real& x1, const Real& y0, const Real& y1, int depth,
                 const Real& tol, std::vector<RootCandidate>& out) {
  const auto w = winding(f, x0, x1, y0, y1);
  if (w && *w == 0) return;
  const Real half(0.5, x0.prec());
  const Real xm = (x0 + x1) * half, ym = (y0 + y1) * half;
  if (depth == 0 || !w) {
    const Real radius = sqrt((x1 - x0) * (x1 - x0) + (y1 - y0) * (y1 - y0)) * half;
    out.push_back(RootCandidate{Complex(xm, ym), radius, w ? *w : 0, w ? "winding" : "winding-inconclusive",
                                abs(xm) <= tol});
    return;
  }
  refine_cell(f, x0, xm, y0, ym, depth - 1, tol, out);
  refine_cell(f, xm, x1, y0, ym, depth - 1, tol, out);
  refine_cell(f, x0, xm, ym, y1, depth - 1, tol, out);
  refine_cell(f, xm, x1, ym, y1, depth - 1, tol, out);
}

}  // namespace

std::vector<RootCandidate> root_scan(RootTarget target, const Real& t, const RootBox& box, int grid, int depth,
                                     const Real& tolerance) {
  check_t(t);
  std::vector<RootCandidate> out;
  if (!(box.re_min < box.re_max) || !(box.im_min <= box.im_max) || grid < 1) return out;
  const mpfr_prec_t p = t.prec();
  const Evaluator f{target, t, ldexp(Real(1L, p), -static_cast<long>(p) / 3)};
  const Real half(0.5, p);

  // real axis: certified sign changes, bisected
  if (box.im_min.sign() <= 0 && box.im_max.sign() >= 0) {
    const Real step = (box.re_max - box.re_min) / Real(static_cast<long>(grid) * 4, p);
    std::optional<Sample> prev;
    for (int j = 0; j <= grid * 4; ++j) {
      const Sample s = f(Complex(box.re_min + step * Real(static_cast<long>(j), p)));
      if (!s.certain) continue;
      if (prev && prev->f.re.sign() * s.f.re.sign() < 0) {
        Real lo = prev->z.re, hi = s.z.re;
        int lo_sign = prev->f.re.sign();
        for (int it = 0; it < 400 && hi - lo > tolerance; ++it) {
          const Real mid = (lo + hi) * half;
          const Sample m = f(Complex(mid));
          if (!m.certain) break;
          if (m.f.re.sign() == lo_sign) lo = mid;
          else hi = mid;
        }
        const Real c = (lo + hi) * half;
        out.push_back(RootCandidate{Complex(c), (hi - lo) * half, 1, "sign-change", abs(c) <= tolerance});
      }
      prev = s;
    }
  }

  // complex cells with nonzero winding number
  if (box.im_min < box.im_max) {
    std::vector<RootCandidate> cells;
    const Real dx = (box.re_max - box.re_min) / Real(static_cast<long>(grid), p);
    const Real dy = (box.im_max - box.im_min) / Real(static_cast<long>(grid), p);
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const Real x0 = box.re_min + dx * Real(static_cast<long>(i), p);
        const Real y0 = box.im_min + dy * Real(static_cast<long>(j), p);
        refine_cell(f, x0, x0 + dx, y0, y0 + dy, depth, tolerance, cells);
      }
    for (auto& c : cells) {
      bool duplicate = false;
      for (const auto& r : out)
        if (r.evidence == "sign-change" && abs(r.center.re - c.center.re) <= c.radius && abs(c.center.im) <= c.radius)
          duplicate = true;
      if (!duplicate) out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

std::string num(const Real& r) { return r.str(20); }

}  // namespace

void write_eval_csv(std::ostream& out, const std::vector<std::pair<Complex, EntireEval>>& rows) {
  out << "x_re,x_im,re,im,error_bound,terms\n";
  for (const auto& [x, ev] : rows)
    out << num(x.re) << "," << num(x.im) << "," << num(ev.value.re) << "," << num(ev.value.im) << ","
        << ev.error_bound.str(6) << "," << ev.terms_used << "\n";
}

void write_maclaurin_csv(std::ostream& out, const std::vector<MaclaurinRow>& rows) {
  out << "x_re,x_im,analytic_re,analytic_im,difference,analytic_bound,tail_bound,rounding_bound,pass\n";
  for (const auto& r : rows)
    out << num(r.x.re) << "," << num(r.x.im) << "," << num(r.analytic.re) << "," << num(r.analytic.im) << ","
        << r.difference.str(6) << "," << r.analytic_bound.str(6) << "," << r.tail_bound.str(6) << ","
        << r.rounding_bound.str(6) << "," << (r.pass ? "true" : "false") << "\n";
}

void write_positivity_csv(std::ostream& out, const std::vector<PositivityRow>& rows) {
  out << "kind,i,x,value,error_bound,positive\n";
  for (const auto& r : rows)
    out << r.kind << "," << r.i << "," << num(r.x) << "," << num(r.value) << "," << r.bound.str(6) << ","
        << (r.positive ? "true" : "false") << "\n";
}

void write_valuation_csv(std::ostream& out, const std::vector<ValuationRow>& rows) {
  out << "n,val,expected,sign,match\n";
  for (const auto& r : rows)
    out << r.n << "," << (r.valuation ? std::to_string(*r.valuation) : "none") << "," << r.expected << ","
        << (r.sign > 0 ? "+" : r.sign < 0 ? "-" : "0") << "," << (r.match ? "true" : "false") << "\n";
}

void write_trace_csv(std::ostream& out, const SmoothnessTrace& trace) {
  out << "n,defined,ratio,reciprocal,t2,distance_to_t2\n";
  const Real t2 = trace.t * trace.t;
  for (const auto& r : trace.rows) {
    out << r.n << "," << (r.defined ? "true" : "false") << ",";
    if (r.defined) out << num(r.ratio) << "," << num(r.reciprocal) << "," << num(t2) << "," << r.distance.str(6);
    else out << ",," << num(t2) << ",";
    out << "\n";
  }
}

void write_roots_csv(std::ostream& out, const std::vector<RootCandidate>& roots) {
  out << "re,im,radius,multiplicity,evidence,real_part_small\n";
  for (const auto& r : roots)
    out << num(r.center.re) << "," << num(r.center.im) << "," << r.radius.str(6) << "," << r.multiplicity << ","
        << r.evidence << "," << (r.real_part_small ? "true" : "false") << "\n";
}

void write_theta_csv(std::ostream& out, const std::vector<ThetaResidual>& rows) {
  out << "x_re,x_im,t,residual,bound\n";
  for (const auto& r : rows)
    out << num(r.x.re) << "," << num(r.x.im) << "," << num(r.t) << "," << r.residual.str(6) << "," << r.bound.str(6)
        << "\n";
}

}  // namespace clnode
