#include "clnode/cl_series.hpp"

#include "clnode/errors.hpp"

namespace clnode {

CLSeries<NumericQ> cl_from_census(const CensusResult& census, int N) {
  if (N < 0) N = census.max_n();
  if (N < 0) throw MissingCount("census has no counts");
  census.count(N);  // MissingCount if short
  const NumericQ ring{Integer(census.q)};
  CLSeries<NumericQ> r{TruncSeries<NumericQ>(ring, N), Provenance{Provenance::Kind::census, census.op, {}}};
  for (int n = 0; n <= N; ++n) {
    r.series[n] = Rational(census.count(n)) / Rational(gl_order(n, census.q));
    r.provenance.oracles.push_back(to_string(census.entries[static_cast<size_t>(n)].oracle));
  }
  return r;
}

TruncSeries<NumericQ> HasseWeilZeta::expand(int N) const {
  const NumericQ ring{q};
  if (denominator.empty() || denominator.front() == 0)
    throw NotInvertible("Hasse-Weil denominator needs a nonzero constant term");
  TruncSeries<NumericQ> num(ring, N), den(ring, N);
  for (size_t i = 0; i < numerator.size() && static_cast<int>(i) <= N; ++i) num[static_cast<int>(i)] = Rational(numerator[i]);
  for (size_t i = 0; i < denominator.size() && static_cast<int>(i) <= N; ++i) den[static_cast<int>(i)] = Rational(denominator[i]);
  return num * invert(den);
}

std::vector<Integer> HasseWeilZeta::point_counts(int m_max) const {
  const auto logz = log_series(expand(m_max));
  std::vector<Integer> counts;
  for (int m = 1; m <= m_max; ++m) {
    const Rational c = logz[m] * m;
    if (c.get_den() != 1) throw Error("point count is not an integer for " + name);
    counts.push_back(c.get_num());
  }
  return counts;
}

HasseWeilZeta hasse_weil(const std::string& preset, const Integer& q) {
  if (q < 2) throw OutOfRange("q must be >= 2");
  if (preset == "A1") return {preset, q, {1}, {1, -q}};
  if (preset == "A1-minus-point") return {preset, q, {1, -1}, {1, -q}};
  if (preset == "P1") return {preset, q, {1}, {1, -(q + 1), q}};
  if (preset == "A2") return {preset, q, {1}, {1, -q * q}};
  throw UnknownPreset("unknown variety preset '" + preset + "'");
}

namespace {

// sum_{i>=1} log Z(t^i x^s) for every stride s in `strides`.
TruncSeries<NumericQ> log_of_product(const HasseWeilZeta& z, int N, const std::vector<int>& strides) {
  const NumericQ ring{z.q};
  TruncSeries<NumericQ> g(ring, N);
  if (N == 0) return g;
  const auto counts = z.point_counts(N);
  const Rational t = ring.t();
  for (int m = 1; m <= N; ++m) {
    const Rational tm = rpow(t, m);
    const Rational c = Rational(counts[static_cast<size_t>(m - 1)]) / m * tm / (1 - tm);
    for (int s : strides)
      if (static_cast<long>(s) * m <= N) g[s * m] += c;
  }
  return g;
}

}  // namespace

TruncSeries<NumericQ> curve_product(const HasseWeilZeta& z, int N) { return exp_series(log_of_product(z, N, {1})); }

TruncSeries<NumericQ> surface_product(const HasseWeilZeta& z, int N) {
  std::vector<int> strides;
  for (int i = 1; i <= std::max(N, 1); ++i) strides.push_back(i);
  return exp_series(log_of_product(z, N, strides));
}

namespace {

// Census up to N, shrinking N while the budget refuses it.
std::optional<CensusResult> census_within_budget(const std::string& op, int q, int N, const CensusOptions& opts,
                                                 const CensusCache* cache, Report& report) {
  for (int n = N; n >= 0; --n) {
    try {
      auto r = run_census(op, q, n, std::nullopt, std::nullopt, opts, cache);
      if (n < N)
        report.warnings.push_back(op + " census stops at n=" + std::to_string(n) + " (budget); higher coefficients unchecked");
      for (const auto& e : r.entries)
        if (e.oracle == Oracle::formula)
          report.warnings.push_back(op + " census at n=" + std::to_string(e.n) + " uses the closed-form oracle");
      return r;
    } catch (const TooLarge&) {
    }
  }
  report.warnings.push_back(op + " census refused by the budget for every n");
  return std::nullopt;
}

// Per-coefficient comparison that records the census provenance with the value.
void compare_census(Report& report, const std::string& id, const std::string& ref, const CLSeries<NumericQ>& lhs,
                    const TruncSeries<NumericQ>& rhs) {
  const int N = std::min(lhs.series.order(), rhs.order());
  for (int n = 0; n <= N; ++n) {
    Json l;
    l["value"] = rational_json(lhs.series[n]);
    l["census"] = lhs.provenance.name;
    l["oracle"] = lhs.provenance.oracles.at(static_cast<size_t>(n));
    report.add(id + "/x^" + std::to_string(n), ref, l, rational_json(rhs[n]), lhs.series[n] == rhs[n]);
  }
}

}  // namespace

Report smooth_product_check(ProductKind kind, const std::string& preset, int q, int N, const CensusOptions& opts,
                            const CensusCache* cache) {
  const auto z = hasse_weil(preset, q);
  const NumericQ ring{Integer(q)};
  Report report;
  report.name = "smooth-products/" + preset + "/q=" + std::to_string(q);
  const bool surface = preset == "A2";
  if ((kind == ProductKind::surface) != surface)
    throw OutOfRange(std::string(surface ? "A2 is a surface" : preset + " is a curve") + "; wrong product kind");

  if (surface) {
    const auto rhs = surface_product(z, N);
    if (auto census = census_within_budget("commuting", q, N, opts, cache, report))
      compare_census(report, "A2/commuting-census", "commuting pairs / |GL_n| = [x^n] prod_{i,j>=1} Z_A2(t^j x^i)",
                     cl_from_census(*census), rhs);
    return report;
  }

  const auto rhs = curve_product(z, N);
  if (preset == "A1") {
    if (auto census = census_within_budget("matrices", q, N, opts, cache, report))
      compare_census(report, "A1/matrix-census", "q^{n^2} / |GL_n| = [x^n] prod_{i>=1} Z_A1(t^i x)",
                     cl_from_census(*census), rhs);
    report.append(compare_series("A1/euler-sum", "prod_{i>=1} Z_A1(t^i x) = 1/(x;t)_inf", rhs,
                                 invert(pochhammer_inf(TruncSeries<NumericQ>::x(ring, N), ring.t()))));
  } else if (preset == "A1-minus-point") {
    if (auto census = census_within_budget("invertible-pair", q, N, opts, cache, report))
      compare_census(report, "A1-minus-point/invertible-pair-census",
                     "#{AB = BA = I} / |GL_n| = [x^n] prod_{i>=1} Z(t^i x)", cl_from_census(*census), rhs);
    TruncSeries<NumericQ> geometric(ring, N);
    for (int n = 0; n <= N; ++n) geometric[n] = 1;
    report.append(compare_series("A1-minus-point/collapse", "prod_{i>=1} Z(t^i x) = 1/(1-x)", rhs, geometric));
  } else {
    // P1 = A1 plus one rational point with local factor 1/(xt;t)_inf
    if (auto census = census_within_budget("matrices", q, N, opts, cache, report)) {
      auto lhs = cl_from_census(*census);
      lhs.series = lhs.series * series_Zhat_smooth_local(lhs.series.order(), ring);
      lhs.provenance.name = "matrices x local factor at infinity";
      compare_census(report, "P1/euler-product", "Z(A1) * 1/(xt;t)_inf = [x^n] prod_{i>=1} Z_P1(t^i x)", lhs, rhs);
    }
  }
  return report;
}

namespace {

template <class Ring>
Report node_series_checks(int N, const Ring& ring) {
  Report report;
  const auto formula = series_Zhat_node_global(N, ring);
  const auto factorized = series_node_factorized(N, ring);
  const auto local = series_Zhat_node_local(N, ring);
  report.append(compare_series("node/rank-formula-vs-product",
                               "sum_k [n,k]_t / (t;t)_k = [x^n] (x;t)_inf^-2 H(x;t)", formula, factorized));
  TruncSeries<Ring> line(ring, N);
  for (int n = 0; n <= N; ++n) line[n] = ring.one();
  const auto g = cl_from_formula("node global", formula);
  const auto open = cl_from_formula("two lines minus the node", line * line);
  const auto loc = cl_from_formula("node local", local);
  auto eq = euler_quotient_check(g, open, loc);
  for (auto& c : eq.checks) {
    c.id = "node/" + c.id;
    c.ref = "Z_node(x) = (1/(1-x))^2 * (xt;t)_inf^-2 H(x;t)";
  }
  report.append(eq);
  return report;
}

}  // namespace

Report node_pipeline(int N, const NumericQ& ring, const NodeOptions& opts) {
  Report report = node_series_checks(N, ring);
  report.name = "node/q=" + ring.q.get_str();
  if (!opts.use_census) return report;
  if (!ring.q.fits_sint_p() || !Fq::supported(static_cast<int>(ring.q.get_si()))) {
    report.warnings.push_back("no census for q=" + ring.q.get_str() + "; formula-only mode");
    return report;
  }
  const int q = static_cast<int>(ring.q.get_si());
  if (auto census = census_within_budget("annihilating", q, N, opts.census, opts.cache, report))
    compare_census(report, "node/annihilating-census", "#{AB = BA = 0} / |GL_n| = [x^n] (x;t)_inf^-2 H(x;t)",
                   cl_from_census(*census), series_node_factorized(census->max_n(), ring));
  if (auto census = census_within_budget("nilpotent-pair", q, N, opts.census, opts.cache, report))
    compare_census(report, "node/nilpotent-pair-census",
                   "#{AB = BA = 0, A, B nilpotent} / |GL_n| = [x^n] (xt;t)_inf^-2 H(x;t)", cl_from_census(*census),
                   series_Zhat_node_local(census->max_n(), ring));
  return report;
}

Report node_pipeline(int N, const SymbolicT& ring) {
  Report report = node_series_checks(N, ring);
  report.name = "node/T=" + std::to_string(ring.T);
  return report;
}

}  // namespace clnode
