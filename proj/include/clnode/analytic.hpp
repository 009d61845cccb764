#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "clnode/real.hpp"

namespace clnode {

/// A value with a rigorous bound on |value - true value|. Bounds are
/// computed in round-to-nearest and padded by a rounding allowance.
struct EntireEval {
  Complex value;
  Real error_bound;
  int terms_used = 0;
  int max_factors = 0;  // longest truncated infinite product
};

// H(x; t) = sum_k t^{k^2} x^{2k} / (t;t)_k (x t^{k+1}; t)_inf to within
// `target`. Precision is taken from t. Throws NonConvergent unless 0 < t < 1,
// PrecisionExhausted if rounding alone could exceed a quarter of the target.
EntireEval eval_H(const Complex& x, const Real& t, const Real& target);
// H(t^{-i}; t) = t^{-i^2} (t;t)_inf sum_m t^{m^2} / ((t;t)_m (t;t)_{m+i}),
// the re-indexed sum where terms k < i vanish.
EntireEval eval_H_at_inverse_power(int i, const Real& t, const Real& target);
// (a; t)_inf.
EntireEval eval_pochhammer(const Complex& a, const Real& t, const Real& target);
// Partial theta function sum_n t^{n^2} x^n.
EntireEval eval_theta(const Complex& x, const Real& t, const Real& target);
// H(x;t) = F(x^2;t) + x G(x^2;t).
EntireEval eval_F(const Complex& y, const Real& t, const Real& target);
EntireEval eval_G(const Complex& y, const Real& t, const Real& target);
// (xt;t)_inf^{-2} H(x;t), the local series of the node.
EntireEval eval_Zhat_node_local(const Complex& x, const Real& t, const Real& target);

// x^n coefficient of H as a finite sum over 2k + m = n.
Real h_coefficient(int n, const Real& t);
Rational h_coefficient(int n, const Rational& t);

struct MaclaurinRow {
  Complex x;
  Complex analytic;
  Complex polynomial;
  Real difference;
  Real analytic_bound;
  Real tail_bound;      // Cauchy bound for the omitted x^n, n > N
  Real rounding_bound;  // Horner evaluation of the truncated series
  bool pass = false;
};

// Deterministic sample points: x = 0, x = radius, then pseudo-random points
// in the closed disc.
std::vector<Complex> sample_disc(const Real& radius, int count, unsigned seed);

// Compares eval_H with the exact degree-N Maclaurin polynomial at t = 1/q.
std::vector<MaclaurinRow> maclaurin_vs_analytic(int q, const std::vector<Complex>& xs, int N, const Real& target,
                                                int workers = 1);

struct ThetaResidual {
  Complex x;
  Real t;
  Real residual;  // |Theta(x) - t x Theta(t^2 x) - 1|
  Real bound;     // evaluation error carried into the residual
};

ThetaResidual theta_functional_residual(const Complex& x, const Real& t, const Real& target);
std::vector<ThetaResidual> theta_residual_samples(int count, unsigned seed, mpfr_prec_t prec, const Real& target,
                                                  int workers = 1);

struct PositivityRow {
  std::string kind;  // "grid" or "inverse-power"
  int i = 0;         // for inverse powers
  Real x;
  Real value;
  Real bound;
  bool positive = false;  // value - bound > 0
};

// H on `grid` points of (0, 1/t), at x = 0, and at x = t^{-i} for i <= i_max.
std::vector<PositivityRow> positivity_scan(const Real& t, int i_max, int grid, const Real& target);
std::vector<PositivityRow> positivity_at(const Real& t, const std::vector<Real>& xs, const Real& target);

struct ValuationRow {
  int n = 0;
  std::optional<int> valuation;  // empty if a_n vanishes mod t^{T+1}
  int expected = 0;              // ceil(n^2 / 4)
  int sign = 0;                  // sign of the leading coefficient
  bool match = false;            // valuation and sign (-1)^n as conjectured
};

// Symbolic scan of the coefficients of H. Needs T > ceil(N^2/4), else
// TruncationTooLow.
std::vector<ValuationRow> coefficient_valuation_scan(int N, int T);

enum class TraceTarget { F, G, Theta };
TraceTarget trace_target_from_string(const std::string& s);
std::string to_string(TraceTarget t);

struct TraceRow {
  int n = 0;
  bool defined = false;  // false when a_{n-1} a_{n+1} = 0 or a_n = 0
  Real ratio;            // a_n^2 / (a_{n-1} a_{n+1})
  Real reciprocal;       // a_{n-1} a_{n+1} / a_n^2, the quantity compared with t^2
  Real distance;         // |reciprocal - t^2|
};

struct SmoothnessTrace {
  TraceTarget target = TraceTarget::F;
  Real t;
  std::vector<Real> coefficients;  // a_0 .. a_{n_max}
  std::vector<TraceRow> rows;      // n = 1 .. n_max - 1
};

SmoothnessTrace smoothness_trace(TraceTarget target, const Real& t, int n_max);

enum class RootTarget { H, F, G };
RootTarget root_target_from_string(const std::string& s);

struct RootBox {
  Real re_min, re_max, im_min, im_max;
};

struct RootCandidate {
  Complex center;
  Real radius;        // half-width of the bracket or half-diagonal of the cell
  int multiplicity = 1;
  std::string evidence;  // "sign-change" or "winding"
  bool real_part_small = false;
};

// Real-axis sign changes refined by bisection, and cells of a grid x grid
// subdivision with nonzero winding number refined by quartering `depth`
// times. An empty box gives no candidates.
std::vector<RootCandidate> root_scan(RootTarget target, const Real& t, const RootBox& box, int grid, int depth,
                                     const Real& tolerance);

// CSV writers.
void write_eval_csv(std::ostream& out, const std::vector<std::pair<Complex, EntireEval>>& rows);
void write_maclaurin_csv(std::ostream& out, const std::vector<MaclaurinRow>& rows);
void write_positivity_csv(std::ostream& out, const std::vector<PositivityRow>& rows);
void write_valuation_csv(std::ostream& out, const std::vector<ValuationRow>& rows);
void write_trace_csv(std::ostream& out, const SmoothnessTrace& trace);
void write_roots_csv(std::ostream& out, const std::vector<RootCandidate>& roots);
void write_theta_csv(std::ostream& out, const std::vector<ThetaResidual>& rows);

}  // namespace clnode
