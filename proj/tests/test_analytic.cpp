#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "clnode/analytic.hpp"
#include "clnode/qseries.hpp"

using namespace clnode;

namespace {

constexpr mpfr_prec_t kPrec = 192;

Real R(double v) { return Real(v, kPrec); }
Real tgt(long bits) { return ldexp(Real(1L, kPrec), -bits); }

// prod_{j>=0} (1 + c t^{s j}), summed far past any visible digit.
Real plus_product(const Real& c, const Real& t, int s) {
  Real prod(1L, kPrec), f = c;
  for (int j = 0; j < 600; ++j) {
    prod *= Real(1L, kPrec) + f;
    f *= pow(t, s);
  }
  return prod;
}

Real tt_inf(const Real& t) {
  Real prod(1L, kPrec), f = t;
  for (int j = 0; j < 600; ++j) {
    prod *= Real(1L, kPrec) - f;
    f *= t;
  }
  return prod;
}

bool within(const EntireEval& ev, const Complex& exact) { return abs(ev.value - exact) <= ev.error_bound; }

}  // namespace

TEST_CASE("H at 0 and at the units") {
  const Real t = R(0.5);
  const auto zero = eval_H(Complex(R(0)), t, tgt(100));
  CHECK(zero.value.re == R(1));
  CHECK(zero.error_bound.is_zero());

  const auto one = eval_H(Complex(R(1)), t, tgt(100));
  CHECK(within(one, Complex(R(1))));
  CHECK(one.error_bound <= tgt(100));

  // H(-1) = (-t;t)_inf (-t;t^2)_inf
  const auto minus = eval_H(Complex(R(-1)), t, tgt(100));
  CHECK(within(minus, Complex(plus_product(t, t, 1) * plus_product(t, t, 2))));
  CHECK(abs(minus.value.im) <= minus.error_bound);
}

TEST_CASE("bad t and precision") {
  CHECK_THROWS_AS(eval_H(Complex(R(1)), R(1), tgt(10)), NonConvergent);
  CHECK_THROWS_AS(eval_H(Complex(R(1)), R(0), tgt(10)), NonConvergent);
  CHECK_THROWS_AS(eval_theta(Complex(R(1)), R(-0.5), tgt(10)), NonConvergent);
  CHECK_THROWS_AS(eval_H(Complex(R(1)), R(0.5), tgt(kPrec + 20)), PrecisionExhausted);
}

TEST_CASE("pochhammer and the local node series at the units") {
  const Real t = R(0.25);
  const auto p = eval_pochhammer(Complex(t), t, tgt(120));
  CHECK(within(p, Complex(tt_inf(t))));
  const auto z1 = eval_Zhat_node_local(Complex(R(1)), t, tgt(100));
  const Real tt = tt_inf(t);
  CHECK(within(z1, Complex(Real(1L, kPrec) / (tt * tt))));
  const auto zm = eval_Zhat_node_local(Complex(R(-1)), t, tgt(100));
  CHECK(within(zm, Complex(Real(1L, kPrec) / plus_product(t * t, t, 2))));
}

TEST_CASE("complex evaluation agrees with the product formula at x = 1") {
  // the error bound must also hold along a complex direction
  const Real t = R(0.5);
  const Complex x(R(0.6), R(0.8));
  const auto a = eval_H(x, t, tgt(90));
  const auto b = eval_H(x, t, tgt(150));
  CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound);
  CHECK(b.error_bound <= tgt(150));
}

TEST_CASE("certified digits are stable when the target shrinks") {
  const Real t = R(0.5);
  for (const double xv : {0.3, -1.7, 1.9}) {
    const auto a = eval_H(Complex(R(xv)), t, tgt(60));
    const auto b = eval_H(Complex(R(xv)), t, tgt(120));
    // both enclosures contain the true value, so they overlap
    CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound);
    CHECK(a.value.re.str(15) == b.value.re.str(15));
  }
}

TEST_CASE("h_coefficient matches the expanded series") {
  const auto h = series_H(20, NumericQ(3));
  for (int n = 0; n <= 20; ++n) {
    CHECK(h_coefficient(n, Rational(1, 3)) == h[n]);
    const Real r = h_coefficient(n, R(1.0) / R(3.0));
    CHECK(abs(r - Real(h[n], kPrec)) <= abs(Real(h[n], kPrec)) * tgt(150));
  }
  CHECK(h_coefficient(1, Rational(1, 2)) == Rational(-1));
  CHECK_THROWS_AS(h_coefficient(-1, Rational(1, 2)), OutOfRange);
}

TEST_CASE("F and G split H into even and odd parts") {
  const Real t = R(0.5);
  const Complex x(R(0.7), R(-0.4));
  const auto h = eval_H(x, t, tgt(100));
  const auto f = eval_F(x * x, t, tgt(100));
  const auto g = eval_G(x * x, t, tgt(100));
  CHECK(abs(f.value + x * g.value - h.value) <= f.error_bound + abs(x) * g.error_bound + h.error_bound);
  const auto g0 = eval_G(Complex(R(0)), t, tgt(100));
  CHECK(abs(g0.value.re - h_coefficient(1, t)) <= g0.error_bound);
}

TEST_CASE("Maclaurin polynomial against the analytic value") {
  const auto xs = sample_disc(R(2.0 / 3.0), 12, 7);
  CHECK(xs.size() == 12);
  CHECK(xs[0].re.is_zero());
  for (const auto& x : xs) CHECK(abs(x) <= R(2.0 / 3.0) * (R(1) + tgt(60)));
  for (const auto& row : maclaurin_vs_analytic(2, xs, 40, tgt(100))) {
    CHECK(row.pass);
    CHECK(row.tail_bound <= tgt(100));
  }
  // a larger |x| at a smaller t
  const auto far = maclaurin_vs_analytic(4, {Complex(R(3))}, 60, tgt(100));
  CHECK(far[0].pass);
  CHECK(far[0].difference <= tgt(60));
  // too few terms: the difference is large but the tail bound still covers it
  const auto short_poly = maclaurin_vs_analytic(2, {Complex(R(1.5))}, 3, tgt(100));
  CHECK(short_poly[0].pass);
  CHECK(short_poly[0].difference > tgt(20));
}

TEST_CASE("theta functional equation") {
  const auto rows = theta_residual_samples(100, 11, 256, ldexp(Real(1L, 256), -200), 1);
  CHECK(rows.size() == 100);
  for (const auto& r : rows) {
    CHECK(r.residual <= r.bound + ldexp(Real(1L, 256), -190));
    CHECK(r.residual.to_double() < 1e-20);
  }
  // same seed, same points
  const auto again = theta_residual_samples(3, 11, 256, ldexp(Real(1L, 256), -200), 2);
  for (int i = 0; i < 3; ++i) CHECK(again[static_cast<size_t>(i)].t == rows[static_cast<size_t>(i)].t);
}

TEST_CASE("positivity on (0, 1/t) and at inverse powers") {
  const Real t = R(0.5);
  for (const auto& row : positivity_at(t, {R(0.5), R(1), R(1.5), R(1.9)}, tgt(80))) CHECK(row.positive);
  const auto scan = positivity_scan(t, 4, 8, tgt(80));
  CHECK(scan.size() == 1 + 8 + 4);
  for (const auto& row : scan) CHECK(row.positive);
  // closed form at t^{-i} agrees with direct evaluation
  const auto direct = eval_H(Complex(R(4)), t, tgt(80));
  const auto closed = eval_H_at_inverse_power(2, t, tgt(80));
  CHECK(abs(direct.value - closed.value) <= direct.error_bound + closed.error_bound);
}

TEST_CASE("coefficient valuations") {
  const auto rows = coefficient_valuation_scan(8, 17);
  REQUIRE(rows.size() == 9);
  CHECK(*rows[0].valuation == 0);
  CHECK(*rows[1].valuation == 1);
  CHECK(rows[1].sign == -1);
  CHECK(*rows[2].valuation == 1);
  for (const auto& r : rows) CHECK(r.match);
  CHECK_THROWS_AS(coefficient_valuation_scan(8, 16), TruncationTooLow);
}

TEST_CASE("smoothness trace") {
  const Real t = R(0.5);
  const auto th = smoothness_trace(TraceTarget::Theta, t, 8);
  CHECK(th.rows.size() == 7);
  for (const auto& r : th.rows) {
    CHECK(r.defined);
    CHECK(r.distance <= tgt(150));
  }
  CHECK(smoothness_trace(TraceTarget::F, t, 2).rows.size() == 1);
  CHECK(smoothness_trace(TraceTarget::G, t, 0).rows.empty());
  const auto f = smoothness_trace(TraceTarget::F, t, 12);
  for (const auto& r : f.rows) CHECK(r.defined);
  CHECK(trace_target_from_string("G") == TraceTarget::G);
  CHECK_THROWS_AS(trace_target_from_string("K"), OutOfRange);
  std::ostringstream os;
  write_trace_csv(os, th);
  CHECK(os.str().rfind("n,defined,ratio,reciprocal,t2,distance_to_t2\n", 0) == 0);
}

TEST_CASE("root scan") {
  const Real t = R(0.5);
  const Real tol = tgt(30);
  CHECK(root_scan(RootTarget::H, t, RootBox{R(1), R(1), R(0), R(0)}, 4, 2, tol).empty());
  // H has no zeros on (0, 1/t)
  CHECK(root_scan(RootTarget::H, t, RootBox{R(0.01), R(1.99), R(0), R(0)}, 8, 0, tol).empty());
  // G(y) at y = 0 is -t/(1-t) < 0 and F(0) = 1 > 0; a real zero of F on the
  // negative axis shows as a sign change with a narrow bracket
  const auto roots = root_scan(RootTarget::F, R(0.25), RootBox{R(-40), R(0), R(0), R(0)}, 16, 0, tol);
  for (const auto& r : roots) {
    CHECK(r.evidence == "sign-change");
    CHECK(r.radius <= tol);
    const auto at = eval_F(r.center, R(0.25), tgt(100));
    CHECK(abs(at.value) <= R(1e-6));
  }
}
