// Acceptance gate: one line per criterion, nonzero exit if a gated criterion
// fails. Criterion 11 is conjectural and only reported.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "clnode/analytic.hpp"
#include "clnode/census.hpp"
#include "clnode/cl_series.hpp"
#include "clnode/fq.hpp"
#include "clnode/fq_matrix.hpp"
#include "clnode/qseries.hpp"
#include "clnode/verify.hpp"
#include "oracles.hpp"

using namespace clnode;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome from_report(const Report& r, bool strict = false) {
  Outcome o;
  o.pass = r.passed(strict);
  std::size_t failed = 0;
  for (const auto& c : r.checks)
    if (!c.pass) ++failed;
  std::ostringstream os;
  os << r.checks.size() << " checks, " << failed << " failed";
  if (const auto* f = r.first_failure(strict)) os << "; first failure " << f->id;
  for (const auto& w : r.warnings) os << "; " << w;
  o.detail = os.str();
  return o;
}

void merge(Outcome& into, const Outcome& part) {
  into.pass = into.pass && part.pass;
  into.detail += (into.detail.empty() ? "" : " | ") + part.detail;
}

// census count / |GL_n| against the x^n coefficient of a series
Outcome census_vs_series(const std::string& op, int q, int n_max, Oracle mode,
                         const TruncSeries<NumericQ>& series) {
  const auto census = run_census(op, q, n_max, mode, std::nullopt, CensusOptions{});
  Outcome o;
  for (int n = 0; n <= n_max; ++n) {
    const Rational lhs = Rational(census.count(n)) / Rational(gl_order(n, Integer(q)));
    if (lhs != series[n]) {
      o.pass = false;
      o.detail += " mismatch at n=" + std::to_string(n);
    }
  }
  o.detail = op + " q=" + std::to_string(q) + " n<=" + std::to_string(n_max) + " " + to_string(mode) +
             (o.pass ? " ok" : o.detail);
  return o;
}

Outcome criterion1() {
  Outcome o;
  for (int q : {2, 3}) {
    const auto f = series_node_factorized(4, NumericQ(q));
    merge(o, census_vs_series("annihilating", q, 2, Oracle::naive, f));
    merge(o, census_vs_series("annihilating", q, q == 2 ? 4 : 3, Oracle::stratified, f));
  }
  return o;
}

Outcome criterion2() {
  const SymbolicT sym(40);
  return from_report(compare_series("node-symbolic", "", series_Zhat_node_global(12, sym),
                                    series_node_factorized(12, sym)));
}

Outcome criterion3() {
  Outcome o;
  merge(o, census_vs_series("nilpotent-pair", 2, 3, Oracle::stratified, series_Zhat_node_local(3, NumericQ(2))));
  merge(o, census_vs_series("nilpotent-pair", 3, 2, Oracle::stratified, series_Zhat_node_local(2, NumericQ(3))));
  const Integer naive = census_nilpotent_mutually_annihilating(2, 2, Oracle::naive);
  const Integer structured = census_nilpotent_mutually_annihilating(2, 2, Oracle::stratified);
  // brute force with plain integer matrices
  long brute = 0;
  for (long a = 0; a < 16; ++a)
    for (long b = 0; b < 16; ++b) {
      const auto A = oracle::matrix_from_code(2, 2, a), B = oracle::matrix_from_code(2, 2, b);
      if (oracle::is_zero(oracle::matmul_mod_p(A, B, 2)) && oracle::is_zero(oracle::matmul_mod_p(B, A, 2)) &&
          oracle::is_nilpotent_mod_p(A, 2) && oracle::is_nilpotent_mod_p(B, 2))
        ++brute;
    }
  const bool eq = naive == structured && naive == brute;
  merge(o, {eq, "n=2 q=2 naive " + naive.get_str() + ", structured " + structured.get_str() + ", brute " +
                    std::to_string(brute)});
  return o;
}

Outcome criterion4() {
  Outcome o = from_report(verify_special_values(40, 12));
  merge(o, from_report(verify_unit_values_numeric(Real(0.5, 128), 1e-10)));
  return o;
}

Outcome criterion5() { return from_report(verify_pole_structure(40)); }

Outcome criterion6() { return from_report(verify_partition_bijections()); }

Outcome criterion7() { return from_report(verify_euler_identities(100, 12)); }

Outcome criterion8() {
  Outcome o;
  merge(o, from_report(smooth_product_check(ProductKind::curve, "A1", 2, 6)));
  for (int q : {2, 3}) merge(o, from_report(smooth_product_check(ProductKind::curve, "A1-minus-point", q, 3)));
  merge(o, from_report(smooth_product_check(ProductKind::surface, "A2", 2, 3)));
  return o;
}

Outcome criterion9() {
  Outcome o;
  long matrices = 0;
  const Fq& f2 = Fq::get(2);
  for (int n = 1; n <= 3; ++n) {
    FqMatrix a(n);
    do {
      ++matrices;
      const int k = nullity(a, f2);
      oracle::IntMat m(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);
      const bool ok = k == n - oracle::rank_mod_p(m, 2) &&
                      count_annihilators(a, f2) == ipow(Integer(2), static_cast<unsigned long>(k * k));
      if (!ok) o.pass = false;
    } while (a.next(2));
  }
  o.detail = std::to_string(matrices) + " matrices A (n<=3, q=2): #B = q^{nullity^2}";
  for (int q : {2, 3, 5})
    for (int n = 0; n <= 5; ++n) {
      Integer sum = 0;
      for (int k = 0; k <= n; ++k) sum += count_by_nullity(n, k, q);
      if (sum != ipow(Integer(q), static_cast<unsigned long>(n * n))) {
        o.pass = false;
        o.detail += "; nullity sum wrong at n=" + std::to_string(n) + " q=" + std::to_string(q);
      }
    }
  o.detail += "; sum_k count_by_nullity = q^{n^2} for n<=5, q in {2,3,5}";
  return o;
}

Outcome criterion10() {
  Outcome o = from_report(verify_maclaurin(2, 20, Real(3L, 256), 40, 1));
  merge(o, from_report(verify_theta_equation(100, 256, 1e-20, 1)));
  return o;
}

Outcome criterion11() { return from_report(verify_coefficient_valuations(20, 101), true); }

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    bool gated;
  };
  const std::vector<Criterion> criteria{
      {1, "node census vs (x;t)^-2 H, numeric", criterion1, true},
      {2, "node rank formula vs (x;t)^-2 H, symbolic mod (x^13, t^41)", criterion2, true},
      {3, "nilpotent-pair census vs (xt;t)^-2 H", criterion3, true},
      {4, "local series at x = +1, -1", criterion4, true},
      {5, "H(t^-i) leading coefficients and Euler quotient", criterion5, true},
      {6, "partition generating functions and Durfee bijections", criterion6, true},
      {7, "Euler identities to t^100", criterion7, true},
      {8, "smooth products from censuses", criterion8, true},
      {9, "annihilator counts by nullity", criterion9, true},
      {10, "certified Maclaurin and theta residuals", criterion10, true},
      {11, "coefficient valuations ceil(n^2/4), sign (-1)^n (conjectural)", criterion11, false},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string status = o.pass ? "PASS" : (c.gated ? "FAIL" : "FAIL (reported only)");
    std::cout << "criterion " << c.id << ": " << status << "  " << c.name << "  [" << o.detail << "] ("
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    if (!o.pass && c.gated) ++failed;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
  return failed ? 1 : 0;
}
