#include "clnode/verify.hpp"

#include <map>

#include "clnode/analytic.hpp"
#include "clnode/errors.hpp"
#include "clnode/partition.hpp"
#include "clnode/qseries.hpp"

namespace clnode {

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"thmB",           "thmA",           "euler-identities",
                                              "partition-bijections", "smooth-products", "special-values",
                                              "all"};
  return names;
}

namespace {

void add_scalar(Report& r, const std::string& id, const std::string& ref, const TSeries& lhs, const TSeries& rhs) {
  r.add(id, ref, scalar_json(lhs), scalar_json(rhs), lhs == rhs);
}

// Guarded t-adic evaluation; a failed guard becomes a failed check.
void add_guarded(Report& r, const std::string& id, const std::string& ref, const TruncSeries<SymbolicT>& f, int sign,
                 const TSeries& rhs) {
  try {
    const TSeries v = evaluate_at_unit(f, sign, [](int n) { return n == 0 ? 0 : n - 1; });
    add_scalar(r, id, ref, v, rhs);
  } catch (const Error& e) {
    r.add(id, ref, Json(e.what()), scalar_json(rhs), false);
  }
}

void add_genfn(Report& r, const std::string& id, const std::string& ref, const GenFnReport& g) {
  Json lhs = "equal";
  if (g.first_mismatch)
    lhs = Json{{"first-mismatch", {{"x", g.first_mismatch->first}, {"t", g.first_mismatch->second}}}};
  r.add(id, ref, lhs, "equal", g.equal);
}

}  // namespace

Report verify_node_counts(const VerifyConfig& cfg) {
  if (cfg.symbolic) return node_pipeline(cfg.N, SymbolicT(cfg.T));
  return node_pipeline(cfg.N, NumericQ(cfg.q), cfg.node);
}

Report verify_special_values(int T, int N) {
  Report r;
  r.name = "special-values/T=" + std::to_string(T);
  const SymbolicT sym(T);
  const TSeries t = sym.t();
  const TSeries tt = pochhammer_inf(t, t);
  const TSeries mt = pochhammer_inf(-t, t);
  add_scalar(r, "H(1)", "H(1;t) = 1", H_at_unit(1, T), sym.one());
  add_scalar(r, "H(-1)", "H(-1;t) = (-t;t)_inf (-t;t^2)_inf", H_at_unit(-1, T),
             mt * pochhammer_inf(-t, sym.t_pow(2)));
  const TSeries inv_tt = tt.inverse(), inv_mt = mt.inverse();
  const TSeries z_plus = inv_tt * inv_tt;
  const TSeries z_minus = pochhammer_inf(-sym.t_pow(2), sym.t_pow(2)).inverse();
  add_scalar(r, "zhat-local(1)/product", "(t;t)_inf^-2 H(1;t) = 1/(t;t)_inf^2", inv_tt * inv_tt * H_at_unit(1, T),
             z_plus);
  add_scalar(r, "zhat-local(-1)/product", "(-t;t)_inf^-2 H(-1;t) = 1/(-t^2;t^2)_inf",
             inv_mt * inv_mt * H_at_unit(-1, T), z_minus);
  // summing the x-series needs every omitted coefficient past t^T
  const auto local = series_Zhat_node_local(std::max(N, T + 1), sym);
  add_guarded(r, "zhat-local(1)/summed", "sum_n [x^n] Zhat_local = 1/(t;t)_inf^2, val_t(a_n) >= n-1", local, 1,
              z_plus);
  add_guarded(r, "zhat-local(-1)/summed", "sum_n (-1)^n [x^n] Zhat_local = 1/(-t^2;t^2)_inf, val_t(a_n) >= n-1",
              local, -1, z_minus);
  return r;
}

Report verify_pole_structure(int T) {
  Report r;
  r.name = "pole-structure/T=" + std::to_string(T);
  for (int i = 1; i <= 5; ++i) {
    const TSeries v = H_at_inverse_power(i, T);
    const auto val = v.valuation();
    Json lhs = nullptr;
    bool pass = false;
    if (val) {
      lhs = Json{{"valuation", *val}, {"leading", rational_json(v[*val])}};
      pass = sgn(v[*val]) > 0;
    }
    r.add("H(t^-" + std::to_string(i) + ")/leading", "t^{i^2} H(t^{-i};t) has positive leading coefficient", lhs,
          "positive", pass);
  }
  const SymbolicT sym(T);
  const int N = 12;
  const auto global = series_Zhat_node_global(N, sym);
  TruncSeries<SymbolicT> geom(sym, N);
  for (int n = 0; n <= N; ++n) geom[n] = sym.one();
  auto q = compare_series("euler-quotient", "Zhat_global(node) = (1/(1-x))^2 Zhat_local(node)", global,
                          geom * geom * series_Zhat_node_local(N, sym));
  r.append(q);
  return r;
}

Report verify_unit_values_numeric(const Real& t, double tolerance) {
  Report r;
  r.name = "unit-values/t=" + t.str(6);
  const mpfr_prec_t p = t.prec();
  const Real target(tolerance * 1e-6, p);
  const Real one(1L, p);
  const auto tt = eval_pochhammer(Complex(t), t, target);
  const auto mt2 = eval_pochhammer(Complex(-(t * t)), t * t, target);
  const std::map<int, Real> expected{{1, one / (tt.value.re * tt.value.re)}, {-1, one / mt2.value.re}};
  for (const auto& [sign, exact] : expected) {
    const auto z = eval_Zhat_node_local(Complex(Real(static_cast<long>(sign), p)), t, target);
    const Real diff = abs(z.value - Complex(exact));
    r.add("zhat-local(" + std::to_string(sign) + ")/numeric",
          sign > 0 ? "Zhat_local(1) = 1/(t;t)_inf^2" : "Zhat_local(-1) = 1/(-t^2;t^2)_inf", z.value.re.str(20),
          exact.str(20), diff.to_double() <= tolerance);
  }
  const auto h1 = eval_H(Complex(one), t, target);
  r.add("H(1)/numeric", "H(1;t) = 1", h1.value.re.str(20), "1", abs(h1.value - Complex(one)).to_double() <= tolerance);
  return r;
}

Report verify_euler_identities(int T, int N) {
  Report r;
  r.name = "euler-identities/T=" + std::to_string(T);
  const SymbolicT sym(T);
  const TSeries t = sym.t();
  TSeries lhs(T);
  for (int k = 0; k * k <= T; ++k) {
    const TSeries p = pochhammer_fin(t, t, k);
    lhs += sym.t_pow(static_cast<long>(k) * k) * (p * p).inverse();
  }
  add_scalar(r, "euler/sum-squares", "sum_k t^{k^2}/(t;t)_k^2 = 1/(t;t)_inf", lhs, pochhammer_inf(t, t).inverse());

  TruncSeries<SymbolicT> e2(sym, N), e3(sym, N);
  for (int n = 0; n <= N; ++n) {
    const TSeries inv = pochhammer_fin(t, t, n).inverse();
    e2[n] = sym.t_pow(static_cast<long>(n) * (n - 1) / 2) * inv;
    e3[n] = inv;
  }
  r.append(compare_series("euler/binomial-theorem", "sum_n t^{C(n,2)} x^n/(t;t)_n = (-x;t)_inf", e2,
                          pochhammer_inf(TruncSeries<SymbolicT>::monomial(sym, N, sym.constant(-1), 1), t)));
  r.append(compare_series("euler/inverse-product", "sum_n x^n/(t;t)_n = 1/(x;t)_inf", e3,
                          invert(pochhammer_inf(TruncSeries<SymbolicT>::x(sym, N), t))));
  for (int n = 0; n <= N; ++n)
    add_scalar(r, "pochhammer-square/n=" + std::to_string(n), "(t^2;t^2)_n = (t;t)_n (-t;t)_n",
               pochhammer_fin(sym.t_pow(2), sym.t_pow(2), n), pochhammer_fin(t, t, n) * pochhammer_fin(-t, t, n));
  return r;
}

Report verify_partition_bijections() {
  Report r;
  r.name = "partition-bijections";
  const int T = 20;
  for (int k = 0; k <= 5; ++k) {
    const std::string ks = std::to_string(k);
    add_genfn(r, "length-bounded/k=" + ks, "sum_{l(lambda) <= k} t^|lambda| = 1/(t;t)_k", check_length_bounded(k, T));
    for (int n = k; n <= k + 5; ++n)
      add_genfn(r, "box/n=" + std::to_string(n) + ",k=" + ks, "sum_{lambda in (n-k) x k box} t^|lambda| = [n,k]_t",
                check_box(n, k, T));
    add_genfn(r, "zeros-bounded-parts/k=" + ks, "sum t^|lambda| x^l(lambda), parts <= k = 1/(x;t)_{k+1}",
              check_zeros_bounded_parts(k, 10, T));
  }
  add_genfn(r, "first-durfee-lemma", "first Durfee square regrouping", check_first_durfee_lemma(5, T));
  add_genfn(r, "durfee-decomposition", "two Durfee square regrouping", check_durfee_decomposition(5, T));
  add_genfn(r, "kl-simplification", "[k,l]_t/(t;t)_k = 1/((t;t)_l (t;t)_{k-l})", check_kl_simplification(10, T));

  long count = 0, bad = 0;
  PartitionBounds b;
  b.max_size = 14;
  for_each_partition(b, [&](const Partition& p) {
    const auto s = split_first_durfee(p);
    ++count;
    if (!(reassemble_first_durfee(s.k, s.right, s.below) == p)) ++bad;
  });
  r.add("first-durfee-bijection", "split then reassemble is the identity, |lambda| <= 14",
        Json{{"partitions", count}, {"failures", bad}}, Json{{"partitions", 508}, {"failures", 0}},
        bad == 0 && count == 508);
  count = bad = 0;
  for_each_partition_with_zeros(6, 6, 36, [&](const PartitionWithZeros& lam) {
    ++count;
    if (!(reassemble_two_durfee(split_two_durfee(lam)) == lam)) ++bad;
  });
  r.add("two-durfee-bijection", "split then reassemble is the identity, length <= 6, parts <= 6",
        Json{{"sequences", count}, {"failures", bad}}, Json{{"sequences", 1716}, {"failures", 0}},
        bad == 0 && count == 1716);
  return r;
}

Report verify_smooth_products(int q, int N, const CensusOptions& opts, const CensusCache* cache) {
  Report r;
  r.name = "smooth-products/q=" + std::to_string(q);
  r.append(smooth_product_check(ProductKind::curve, "A1", q, std::min(N, 6), opts, cache));
  r.append(smooth_product_check(ProductKind::curve, "P1", q, std::min(N, 6), opts, cache));
  r.append(smooth_product_check(ProductKind::curve, "A1-minus-point", q, std::min(N, 3), opts, cache));
  r.append(smooth_product_check(ProductKind::surface, "A2", q, std::min(N, 3), opts, cache));
  return r;
}

Report verify_maclaurin(int q, int count, const Real& radius, int N, int workers) {
  Report r;
  r.name = "maclaurin/q=" + std::to_string(q);
  const Real target = ldexp(Real(1L, radius.prec()), -static_cast<long>(radius.prec()) / 2);
  const auto rows = maclaurin_vs_analytic(q, sample_disc(radius, count, 2024), N, target, workers);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    r.add("maclaurin/sample-" + std::to_string(i), "|H(x) - sum_{n<=N} a_n x^n| <= certified bounds",
          row.difference.str(6), (row.analytic_bound + row.tail_bound + row.rounding_bound).str(6), row.pass);
  }
  return r;
}

Report verify_theta_equation(int count, mpfr_prec_t prec, double tolerance, int workers) {
  Report r;
  r.name = "theta-equation";
  const Real target = ldexp(Real(1L, prec), -static_cast<long>(prec) * 3 / 4);
  const auto rows = theta_residual_samples(count, 97, prec, target, workers);
  for (size_t i = 0; i < rows.size(); ++i)
    r.add("theta/sample-" + std::to_string(i), "Theta(x) = 1 + t x Theta(t^2 x)", rows[i].residual.str(6),
          Json(tolerance), rows[i].residual.to_double() < tolerance);
  return r;
}

Report verify_coefficient_valuations(int N, int T) {
  Report r;
  r.name = "coefficient-valuations";
  for (const auto& row : coefficient_valuation_scan(N, T)) {
    Json lhs = {{"valuation", row.valuation ? Json(*row.valuation) : Json(nullptr)}, {"sign", row.sign}};
    Json rhs = {{"valuation", row.expected}, {"sign", row.n % 2 ? -1 : 1}};
    r.add("valuation/n=" + std::to_string(row.n), "val_t(a_n) = ceil(n^2/4), sign (-1)^n", lhs, rhs, row.match, true);
  }
  return r;
}

Report run_verify(const std::string& suite, const VerifyConfig& cfg) {
  Report r;
  r.name = suite;
  const auto prefixed = [&](const std::string& prefix, Report part) {
    for (auto& c : part.checks) c.id = prefix + "/" + c.id;
    r.append(part);
  };
  const bool all = suite == "all";
  if (!all && suite != "thmB" && suite != "thmA" && suite != "euler-identities" && suite != "partition-bijections" &&
      suite != "smooth-products" && suite != "special-values")
    throw OutOfRange("unknown verify suite '" + suite + "'");
  const Real t(0.5, cfg.prec);
  if (all || suite == "thmB") prefixed("thmB", verify_node_counts(cfg));
  if (all || suite == "thmA") {
    prefixed("thmA", verify_special_values(cfg.T, cfg.N));
    prefixed("thmA", verify_pole_structure(cfg.T));
    prefixed("thmA", verify_unit_values_numeric(t, 1e-10));
  }
  if (all || suite == "euler-identities") prefixed("euler", verify_euler_identities(cfg.T, cfg.N));
  if (all || suite == "partition-bijections") prefixed("partitions", verify_partition_bijections());
  if (all || suite == "smooth-products") prefixed("smooth", verify_smooth_products(cfg.q, cfg.N, cfg.node.census, cfg.node.cache));
  if (all || suite == "special-values") {
    prefixed("special", verify_special_values(cfg.T, cfg.N));
    prefixed("special", verify_maclaurin(2, 20, Real(3L, cfg.prec * 2), 40, cfg.workers));
    prefixed("special", verify_theta_equation(100, 256, 1e-20, cfg.workers));
    prefixed("special", verify_coefficient_valuations(20, 101));
  }
  return r;
}

}  // namespace clnode
