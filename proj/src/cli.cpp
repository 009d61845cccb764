#include "clnode/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "clnode/analytic.hpp"
#include "clnode/census.hpp"
#include "clnode/errors.hpp"
#include "clnode/fq.hpp"
#include "clnode/json_io.hpp"
#include "clnode/qseries.hpp"
#include "clnode/verify.hpp"

namespace clnode {

namespace {

struct UsageError : Error {
  using Error::Error;
};

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = 2;
  while (q % p) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

void check_q(int q) {
  if (!is_prime_power(q)) throw UsageError("q must be a prime power, got " + std::to_string(q));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string output;
  int workers = 1;
};

struct CensusArgs {
  std::string op;
  int n = 0;
  int q = 2;
  std::string mode;
  std::vector<std::string> vars, rels, nils;
  double budget = 17179869184.0;
  std::string checkpoint;
  bool timings = false;
  bool no_cache = false;
};

struct SeriesArgs {
  std::string name;
  bool symbolic = false;
  int q = 2;
  int N = 12;
  int T = 40;
  std::string format = "json";
};

struct VerifyArgs {
  std::string suite;
  bool symbolic = false;
  int q = 2;
  int N = 12;
  int T = 40;
  double budget = 17179869184.0;
  bool strict = false;
  bool no_census = false;
  bool no_cache = false;
};

struct AnalyticArgs {
  std::string what;
  std::string x = "0", x_im = "0", t = "0.5";
  std::string function = "H";
  std::string target = "F";
  std::string tolerance = "1e-30";
  long prec = 128;
  int i_max = 5, grid = 16, depth = 3, n_max = 20, N = 20, T = -1;
  int q = 2, samples = 20;
  unsigned seed = 2024;
  std::string radius = "3";
  std::vector<std::string> box{"-4", "4", "-4", "4"};
  bool strict = false;
};

template <class Fn>
std::string run_series(const SeriesArgs& a, Fn&& build) {
  std::ostringstream os;
  const auto emit = [&](const auto& f) {
    if (a.format == "csv") write_series_csv(os, f);
    else os << dump(series_json(f));
  };
  if (a.symbolic) emit(build(SymbolicT(a.T)));
  else emit(build(NumericQ(a.q)));
  return os.str();
}

template <class Ring>
TruncSeries<Ring> named_series(const std::string& name, int N, const Ring& ring) {
  if (name == "H") return series_H(N, ring);
  if (name == "node-global") return series_Zhat_node_global(N, ring);
  if (name == "node-factorized") return series_node_factorized(N, ring);
  if (name == "node-local") return series_Zhat_node_local(N, ring);
  if (name == "smooth-local") return series_Zhat_smooth_local(N, ring);
  if (name == "plane-local") return series_Zhat_plane_local(N, ring);
  if (name == "theta") return series_theta_partial(N, ring);
  throw UsageError("unknown series '" + name + "'");
}

Real parse_real(const std::string& s, mpfr_prec_t prec) {
  try {
    return Real(s, prec);
  } catch (const OutOfRange&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

struct Outcome {
  std::string text;
  int code = kExitOk;
};

Outcome cmd_census(const CensusArgs& a, const Common& c) {
  if (a.n < 0) throw UsageError("-n must be >= 0");
  if (a.budget < 1) throw UsageError("--budget must be >= 1");
  std::optional<Oracle> mode;
  if (!a.mode.empty()) mode = oracle_from_string(a.mode);
  std::optional<Presentation> pres;
  if (!a.vars.empty() || !a.rels.empty() || !a.nils.empty()) pres = parse_presentation(a.vars, a.rels, a.nils);
  CensusOptions opts;
  opts.workers = c.workers;
  opts.budget = a.budget;
  opts.checkpoint_path = a.checkpoint;
  std::optional<CensusCache> cache;
  if (!a.no_cache) cache.emplace(CensusCache::default_dir());
  const auto result = run_census(a.op, a.q, a.n, mode, pres, opts, cache ? &*cache : nullptr);
  return {dump(to_json(result, a.timings))};
}

Outcome cmd_verify(const VerifyArgs& a, const Common& c) {
  if (a.N < 0 || a.T < 0) throw UsageError("-N and -T must be >= 0");
  if (a.budget < 1) throw UsageError("--budget must be >= 1");
  check_q(a.q);
  VerifyConfig cfg;
  cfg.symbolic = a.symbolic;
  cfg.q = a.q;
  cfg.N = a.N;
  cfg.T = a.T;
  cfg.workers = c.workers;
  cfg.node.use_census = !a.no_census;
  cfg.node.census.workers = c.workers;
  cfg.node.census.budget = a.budget;
  std::optional<CensusCache> cache;
  if (!a.no_cache) cache.emplace(CensusCache::default_dir());
  cfg.node.cache = cache ? &*cache : nullptr;
  const Report r = run_verify(a.suite, cfg);
  return {dump(certificate_json(r, a.strict)), r.passed(a.strict) ? kExitOk : kExitCheckFailed};
}

Outcome cmd_analytic(const AnalyticArgs& a, const Common& c) {
  if (a.prec < 32 || a.prec > 1 << 16) throw UsageError("--prec must lie in [32, 65536]");
  const auto prec = static_cast<mpfr_prec_t>(a.prec);
  const Real t = parse_real(a.t, prec);
  const Real tol = parse_real(a.tolerance, prec);
  if (tol.sign() <= 0) throw UsageError("--tolerance must be positive");
  std::ostringstream os;
  int code = kExitOk;
  if (a.what == "eval") {
    const Complex x(parse_real(a.x, prec), parse_real(a.x_im, prec));
    EntireEval ev;
    if (a.function == "H") ev = eval_H(x, t, tol);
    else if (a.function == "F") ev = eval_F(x, t, tol);
    else if (a.function == "G") ev = eval_G(x, t, tol);
    else if (a.function == "theta") ev = eval_theta(x, t, tol);
    else if (a.function == "node-local") ev = eval_Zhat_node_local(x, t, tol);
    else throw UsageError("unknown function '" + a.function + "'");
    write_eval_csv(os, {{x, ev}});
  } else if (a.what == "positivity") {
    const auto rows = positivity_scan(t, a.i_max, a.grid, tol);
    write_positivity_csv(os, rows);
    for (const auto& r : rows)
      if (!r.positive) code = kExitCheckFailed;
  } else if (a.what == "valuations") {
    const int T = a.T >= 0 ? a.T : (a.N * a.N + 3) / 4 + 1;
    const auto rows = coefficient_valuation_scan(a.N, T);
    write_valuation_csv(os, rows);
    // conjectural: gates only on request
    if (a.strict)
      for (const auto& r : rows)
        if (!r.match) code = kExitCheckFailed;
  } else if (a.what == "smoothness") {
    write_trace_csv(os, smoothness_trace(trace_target_from_string(a.target), t, a.n_max));
  } else if (a.what == "roots") {
    if (a.box.size() != 4) throw UsageError("--box takes re_min re_max im_min im_max");
    const RootBox box{parse_real(a.box[0], prec), parse_real(a.box[1], prec), parse_real(a.box[2], prec),
                      parse_real(a.box[3], prec)};
    write_roots_csv(os, root_scan(root_target_from_string(a.function), t, box, a.grid, a.depth, tol));
  } else if (a.what == "maclaurin") {
    const auto rows =
        maclaurin_vs_analytic(a.q, sample_disc(parse_real(a.radius, prec), a.samples, a.seed), a.N, tol, c.workers);
    write_maclaurin_csv(os, rows);
    for (const auto& r : rows)
      if (!r.pass) code = kExitCheckFailed;
  } else if (a.what == "theta") {
    const auto rows = theta_residual_samples(a.samples, a.seed, prec, tol, c.workers);
    write_theta_csv(os, rows);
    for (const auto& r : rows)
      if (r.residual > r.bound) code = kExitCheckFailed;
  }
  return {os.str(), code};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohen-Lenstra series of the node: censuses, q-series, verification and analytic scans", "clnode"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-o,--output", common.output, "write the artifact to this file instead of stdout");
  app.add_option("-w,--workers", common.workers, "worker threads")->check(CLI::Range(1, 1024));

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "count matrix tuples over F_q for n = 0..N");
  census->add_option("op", ca.op, "operation")->required()->check(CLI::IsMember(census_ops()));
  census->add_option("-n", ca.n, "largest matrix size")->required();
  census->add_option("-q", ca.q, "field size")->required();
  census->add_option("--mode", ca.mode, "oracle")->check(CLI::IsMember({"naive", "stratified", "formula"}));
  census->add_option("--vars", ca.vars, "module-variety variables")->delimiter(',');
  census->add_option("--rel", ca.rels, "module-variety relation (repeatable)");
  census->add_option("--nil", ca.nils, "variable required to act nilpotently (repeatable)");
  census->add_option("--budget", ca.budget, "largest allowed enumeration");
  census->add_option("--checkpoint", ca.checkpoint, "resumable progress file");
  census->add_flag("--timings", ca.timings, "include wall-clock times");
  census->add_flag("--no-cache", ca.no_cache, "neither read nor write the census cache");

  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "expand a named series");
  series->add_option("name", sa.name, "series")
      ->required()
      ->check(CLI::IsMember({"H", "node-global", "node-factorized", "node-local", "smooth-local", "plane-local",
                             "theta"}));
  series->add_flag("--symbolic", sa.symbolic, "coefficients as series in t");
  series->add_option("-q", sa.q, "numeric mode: t = 1/q");
  series->add_option("-N", sa.N, "x-order");
  series->add_option("-T", sa.T, "t-order (symbolic)");
  series->add_option("--format", sa.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite and print its certificate");
  verify->add_option("suite", va.suite, "suite")->required()->check(CLI::IsMember(verify_suites()));
  verify->add_flag("--symbolic", va.symbolic, "node counts in symbolic mode");
  verify->add_option("-q", va.q, "field size");
  verify->add_option("-N", va.N, "x-order");
  verify->add_option("-T", va.T, "t-order");
  verify->add_option("--budget", va.budget, "largest allowed census enumeration");
  verify->add_flag("--strict-conjectures", va.strict, "conjectural checks also decide the exit code");
  verify->add_flag("--no-census", va.no_census, "formula checks only");
  verify->add_flag("--no-cache", va.no_cache, "neither read nor write the census cache");

  AnalyticArgs aa;
  auto* analytic = app.add_subcommand("analytic", "certified numerics for H and friends, as CSV");
  analytic->add_option("what", aa.what, "scan")
      ->required()
      ->check(CLI::IsMember({"eval", "positivity", "valuations", "smoothness", "roots", "maclaurin", "theta"}));
  analytic->add_option("-x", aa.x, "real part of the evaluation point");
  analytic->add_option("--x-im", aa.x_im, "imaginary part of the evaluation point");
  analytic->add_option("-t", aa.t, "t in (0, 1)");
  analytic->add_option("--function", aa.function, "H, F, G, theta, node-local (eval); H, F, G (roots)");
  analytic->add_option("--target", aa.target, "smoothness target: F, G or Theta");
  analytic->add_option("--tolerance", aa.tolerance, "absolute error target");
  analytic->add_option("--prec", aa.prec, "working precision in bits");
  analytic->add_option("--i-max", aa.i_max, "positivity: largest i in x = t^-i");
  analytic->add_option("--grid", aa.grid, "grid points (positivity) or cells per side (roots)");
  analytic->add_option("--depth", aa.depth, "roots: quartering depth");
  analytic->add_option("--n-max", aa.n_max, "smoothness: largest coefficient index");
  analytic->add_option("-N", aa.N, "valuations, maclaurin: x-order");
  analytic->add_option("-T", aa.T, "valuations: t-order (default ceil(N^2/4) + 1)");
  analytic->add_option("-q", aa.q, "maclaurin: t = 1/q");
  analytic->add_option("--samples", aa.samples, "maclaurin, theta: sample count");
  analytic->add_option("--seed", aa.seed, "maclaurin, theta: sample seed");
  analytic->add_option("--radius", aa.radius, "maclaurin: disc radius");
  analytic->add_option("--box", aa.box, "roots: re_min re_max im_min im_max")->expected(4);
  analytic->add_flag("--strict-conjectures", aa.strict, "valuations decide the exit code");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Outcome result;
    if (census->parsed()) result = cmd_census(ca, common);
    else if (series->parsed()) {
      if (sa.N < 0 || sa.T < 0) throw UsageError("-N and -T must be >= 0");
      if (!sa.symbolic) check_q(sa.q);
      result.text = run_series(sa, [&](const auto& ring) { return named_series(sa.name, sa.N, ring); });
    } else if (verify->parsed()) result = cmd_verify(va, common);
    else result = cmd_analytic(aa, common);

    if (common.output.empty()) {
      out << result.text;
    } else {
      std::ofstream f(common.output, std::ios::binary);
      f << result.text;
      if (!f) {
        err << "error: cannot write " << common.output << "\n";
        return kExitRefused;
      }
    }
    return result.code;
  } catch (const TooLarge& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const PrecisionExhausted& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const Interrupted& e) {
    err << "interrupted: " << e.what() << "\n";
    return kExitRefused;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OutOfRange& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedField& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedPresentation& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonConvergent& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TruncationTooLow& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace clnode
