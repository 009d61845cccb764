#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "clnode/census.hpp"
#include "clnode/errors.hpp"
#include "oracles.hpp"

using namespace clnode;

namespace {

oracle::IntMat to_int(const FqMatrix& a) {
  oracle::IntMat m(static_cast<size_t>(a.n()), std::vector<int>(static_cast<size_t>(a.n())));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);
  return m;
}

FqMatrix random_matrix(std::mt19937_64& rng, int n, int q) {
  std::uniform_int_distribution<int> d(0, q - 1);
  FqMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<Fq::Elem>(d(rng));
  return a;
}

Integer qpow(int q, int e) { return ipow(Integer(q), static_cast<unsigned long>(e)); }

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("clnode-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("field tables") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    const Fq& f = Fq::get(q);
    CHECK(f.q() == q);
    for (int a = 1; a < q; ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      // multiplicative group has order q - 1
      Fq::Elem pw = 1;
      for (int i = 0; i < q - 1; ++i) pw = f.mul(pw, a);
      CHECK(pw == 1);
    }
    // characteristic p: p * 1 = 0
    Fq::Elem s = 0;
    for (int i = 0; i < f.characteristic(); ++i) s = f.add(s, 1);
    CHECK(s == 0);
  }
  CHECK(Fq::get(4).degree() == 2);
  CHECK(Fq::get(8).characteristic() == 2);
  CHECK(Fq::get(9).characteristic() == 3);
  CHECK_THROWS_AS(Fq::get(6), UnsupportedField);
  CHECK_THROWS_AS(Fq::get(11), UnsupportedField);
  CHECK_THROWS_AS(Fq::get(16), UnsupportedField);
  CHECK_THROWS_AS(Fq::get(2).inv(0), NotInvertible);
}

TEST_CASE("basic matrix facts") {
  const Fq& f2 = Fq::get(2);
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(0, 5) == 1);
  CHECK(gl_order(3, 3) == Integer(26 * 24 * 18));
  CHECK(nullity(FqMatrix::zero(3), f2) == 3);
  for (int n = 1; n <= 8; ++n) CHECK_FALSE(is_nilpotent(FqMatrix::identity(n), f2));
  CHECK(is_nilpotent(FqMatrix::from_rows({{0, 1}, {0, 0}}, 2), f2));
  // odometer: entry (0,0) is the fastest digit
  CHECK(FqMatrix::from_index(2, 3, 1)(0, 0) == 1);
  CHECK(FqMatrix::from_index(2, 3, 3)(0, 1) == 1);
  FqMatrix a = FqMatrix::from_index(3, 3, 12345);
  CHECK(a.index(3) == 12345);
  a.next(3);
  CHECK(a.index(3) == 12346);
  CHECK_THROWS_AS(FqMatrix(9), OutOfRange);
}

TEST_CASE("rank against the schoolbook oracle, rank-nullity, rank of products") {
  std::mt19937_64 rng(7);
  for (int q : {2, 3, 5, 7}) {
    const Fq& f = Fq::get(q);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 8;
      const FqMatrix a = random_matrix(rng, n, q), b = random_matrix(rng, n, q);
      const int ra = rank(a, f);
      CHECK(ra == oracle::rank_mod_p(to_int(a), q));
      CHECK(ra + nullity(a, f) == n);
      CHECK(rank(multiply(a, b, f), f) <= std::min(ra, rank(b, f)));
      CHECK(to_int(multiply(a, b, f)) == oracle::matmul_mod_p(to_int(a), to_int(b), q));
    }
  }
  // extension fields: rank-nullity and rank of products still hold
  for (int q : {4, 8, 9}) {
    const Fq& f = Fq::get(q);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 6;
      const FqMatrix a = random_matrix(rng, n, q), b = random_matrix(rng, n, q);
      CHECK(rank(a, f) + nullity(a, f) == n);
      CHECK(rank(multiply(a, b, f), f) <= std::min(rank(a, f), rank(b, f)));
      CHECK(static_cast<int>(kernel_basis(a, f).size()) == nullity(a, f));
    }
  }
}

TEST_CASE("kernel bases annihilate and have the right size") {
  std::mt19937_64 rng(11);
  for (int q : {2, 3, 4, 9}) {
    const Fq& f = Fq::get(q);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 5;
      FqMatrix a = random_matrix(rng, n, q);
      if (trial % 3 == 0) a(0, 0) = 0, a = multiply(a, FqMatrix::from_index(n, q, 0), f);  // zero matrix too
      const auto ker = kernel_basis(a, f), left = left_kernel_basis(a, f);
      CHECK(static_cast<int>(ker.size()) == nullity(a, f));
      CHECK(left.size() == ker.size());
      for (const auto& v : ker)
        for (int i = 0; i < n; ++i) {
          Fq::Elem s = 0;
          for (int j = 0; j < n; ++j) s = f.add(s, f.mul(a(i, j), v[static_cast<size_t>(j)]));
          CHECK(s == 0);
        }
      for (const auto& y : left)
        for (int j = 0; j < n; ++j) {
          Fq::Elem s = 0;
          for (int i = 0; i < n; ++i) s = f.add(s, f.mul(y[static_cast<size_t>(i)], a(i, j)));
          CHECK(s == 0);
        }
    }
  }
}

TEST_CASE("packed GF(2) routines agree with the portable reference") {
  const Fq& f = Fq::get(2);
  for (int n = 0; n <= 3; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t i = 0; i < total; ++i) {
      const FqMatrix a = FqMatrix::from_index(n, 2, i);
      const gf2::Packed p = gf2::from_index(n, i);
      REQUIRE(p == gf2::pack(a));
      CHECK(gf2::unpack(p, n) == a);
      CHECK(gf2::rank(p, n) == rank(a, f));
      CHECK(gf2::is_nilpotent(p, n) == is_nilpotent(a, f));
    }
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 8;
    FqMatrix a = random_matrix(rng, n, 2), b = random_matrix(rng, n, 2);
    if (trial % 4 == 0) {
      // strictly upper triangular, so nilpotent
      for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a(i, j) = 0;
    }
    const auto pa = gf2::pack(a), pb = gf2::pack(b);
    CHECK(gf2::unpack(gf2::multiply(pa, pb, n), n) == multiply(a, b, f));
    CHECK(gf2::rank(pa, n) == rank(a, f));
    CHECK(gf2::is_nilpotent(pa, n) == is_nilpotent(a, f));
    CHECK(gf2::rank(gf2::transpose(pa, n), n) == gf2::rank(pa, n));
  }
}

TEST_CASE("count by nullity") {
  CHECK(count_by_nullity(2, 1, 2, Oracle::formula) == 9);
  CHECK(count_by_nullity(2, 1, 2, Oracle::naive) == 9);
  for (int n = 0; n <= 4; ++n) CHECK(count_by_nullity(n, n, 3, Oracle::formula) == 1);
  Integer s = 0;
  for (int k = 0; k <= 3; ++k) s += count_by_nullity(3, k, 2, Oracle::naive);
  CHECK(s == 512);
  CHECK_THROWS_AS(count_by_nullity(2, 3, 2), OutOfRange);
  // brute histogram equals the closed form where enumeration is cheap
  for (auto [n, q] : {std::pair{3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}, {2, 5}, {2, 9}}) {
    const auto hist = nullity_histogram(n, q);
    for (int k = 0; k <= n; ++k) CHECK(hist[static_cast<size_t>(k)] == count_by_nullity(n, k, q, Oracle::formula));
  }
  for (int q : {2, 3, 5})
    for (int n = 0; n <= 5; ++n) {
      Integer total = 0;
      for (int k = 0; k <= n; ++k) total += count_by_nullity(n, k, q, Oracle::formula);
      CHECK(total == qpow(q, n * n));
    }
}

TEST_CASE("mutually annihilating pairs") {
  CHECK(census_mutually_annihilating(1, 2, Oracle::naive) == 3);
  CHECK(census_mutually_annihilating(0, 3, Oracle::naive) == 1);
  CHECK(census_mutually_annihilating(0, 3, Oracle::stratified) == 1);
  CHECK(census_mutually_annihilating(2, 2, Oracle::naive) == 40);
  for (auto [n, q] : {std::pair{1, 2}, {2, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {1, 9}})
    CHECK(census_mutually_annihilating(n, q, Oracle::naive) == census_mutually_annihilating(n, q, Oracle::stratified));
  // stratified against the closed form wherever q^{n^2} is enumerable
  for (auto [n, q] : {std::pair{3, 2}, {4, 2}, {5, 2}, {3, 3}, {4, 3}, {3, 4}, {3, 5}})
    CHECK(census_mutually_annihilating(n, q, Oracle::stratified) ==
          census_mutually_annihilating(n, q, Oracle::formula));
  // independent nested-loop oracle for n = 2, q = 3
  long pairs = 0;
  for (long x = 0; x < 81; ++x)
    for (long y = 0; y < 81; ++y) {
      const auto a = oracle::matrix_from_code(2, 3, x), b = oracle::matrix_from_code(2, 3, y);
      pairs += oracle::is_zero(oracle::matmul_mod_p(a, b, 3)) && oracle::is_zero(oracle::matmul_mod_p(b, a, 3));
    }
  CHECK(census_mutually_annihilating(2, 3, Oracle::stratified) == Integer(pairs));
  CHECK_THROWS_AS(census_mutually_annihilating(4, 3, Oracle::naive), TooLarge);
}

TEST_CASE("annihilator count of a fixed matrix is q^{nullity^2}") {
  for (int n = 0; n <= 3; ++n) {
    const Fq& f = Fq::get(2);
    FqMatrix a(n);
    do {
      CHECK(count_annihilators(a, f) == qpow(2, nullity(a, f) * nullity(a, f)));
    } while (a.next(2));
  }
}

TEST_CASE("nilpotent matrices and nilpotent pairs") {
  CHECK(census_nilpotent(2, 2) == 4);
  CHECK(census_nilpotent(0, 2) == 1);
  for (int q : {2, 3})
    for (int n = 0; n <= 4; ++n) CHECK(census_nilpotent(n, q) * qpow(q, n) == qpow(q, n * n));
  // generic path agrees with an independent oracle
  long nil = 0;
  for (long code = 0; code < 19683; ++code) nil += oracle::is_nilpotent_mod_p(oracle::matrix_from_code(3, 3, code), 3);
  CHECK(census_nilpotent(3, 3) == Integer(nil));
  CHECK(census_nilpotent(2, 4) == 16);

  for (int q : {2, 3, 5}) CHECK(census_nilpotent_mutually_annihilating(1, q) == 1);
  CHECK(census_nilpotent_mutually_annihilating(2, 2) == 10);
  CHECK(census_nilpotent_mutually_annihilating(2, 2, Oracle::naive) == 10);
  CHECK(census_nilpotent_mutually_annihilating(2, 3, Oracle::naive) ==
        census_nilpotent_mutually_annihilating(2, 3, Oracle::stratified));
  CHECK(census_nilpotent_mutually_annihilating(2, 4, Oracle::naive) ==
        census_nilpotent_mutually_annihilating(2, 4, Oracle::stratified));
  CHECK(census_nilpotent_mutually_annihilating(0, 2) == 1);
  CHECK_THROWS_AS(census_nilpotent_mutually_annihilating(2, 2, Oracle::formula), OutOfRange);
}

TEST_CASE("commuting pairs") {
  for (int q : {2, 3, 4, 5}) {
    CHECK(census_commuting_pairs(1, q, Oracle::naive) == q * q);
    CHECK(census_commuting_pairs(1, q, Oracle::stratified) == q * q);
  }
  for (auto [n, q] : {std::pair{2, 2}, {3, 2}, {2, 3}, {2, 4}})
    CHECK(census_commuting_pairs(n, q, Oracle::naive) == census_commuting_pairs(n, q, Oracle::stratified));
  // n=2: q scalars with commutant of dimension 4, the rest dimension 2
  for (int q : {2, 3})
    CHECK(census_commuting_pairs(2, q, Oracle::naive) == q * qpow(q, 4) + (qpow(q, 4) - q) * q * q);
}

TEST_CASE("pairs with AB = BA = I are counted by GL_n") {
  CHECK(census_invertible_pairs_ab_eq_i(2, 2, Oracle::naive) == 6);
  CHECK(census_invertible_pairs_ab_eq_i(2, 2, Oracle::stratified) == 6);
  for (int q : {2, 3})
    for (int n = 0; n <= 3; ++n) CHECK(census_invertible_pairs_ab_eq_i(n, q, Oracle::stratified) == gl_order(n, q));
  CHECK(census_invertible_pairs_ab_eq_i(2, 4, Oracle::stratified) == gl_order(2, 4));
  CHECK(census_invertible_pairs_ab_eq_i(2, 3, Oracle::naive) == gl_order(2, 3));
}

TEST_CASE("presentations") {
  const std::vector<std::string> uv{"u", "v"};
  CHECK(parse_polynomial("uv", uv).terms == parse_polynomial("u*v", uv).terms);
  CHECK(parse_polynomial("u v", uv).terms == parse_polynomial("v*u", uv).terms);
  CHECK(parse_polynomial("(u+v)^2", uv).terms == parse_polynomial("u^2 + 2uv + v^2", uv).terms);
  CHECK(parse_polynomial("u - u", uv).is_zero());
  CHECK(parse_polynomial("-3u^2 + 1", uv).str(uv) == "-3*u^2 + 1");
  for (const char* bad : {"1/u", "u^-1", "sin(u)", "w", "u +", "(u", "u^", "u.5", "u**2"})
    CHECK_THROWS_AS(parse_polynomial(bad, uv), UnsupportedPresentation);
  CHECK_THROWS_AS(parse_presentation({"u", "u"}, {}), UnsupportedPresentation);
  CHECK_THROWS_AS(parse_presentation({"2u"}, {}), UnsupportedPresentation);
  const auto p = parse_presentation(uv, {"uv"}, {"u"});
  CHECK(p.canonical() == parse_presentation(uv, {"v*u"}, {"u"}).canonical());
  CHECK(p.hash() != parse_presentation(uv, {"uv"}).hash());

  const Fq& f = Fq::get(3);
  const FqMatrix a = FqMatrix::from_rows({{1, 2}, {0, 1}}, 3);
  const auto x = parse_polynomial("x^2 - 2x + 1", {"x"});
  // (A - I)^2 = 0 for this unipotent A
  CHECK(evaluate(x, {a}, f).is_zero());
}

TEST_CASE("module variety census") {
  const std::vector<std::string> uv{"u", "v"};
  CHECK(census_module_variety(2, 2, parse_presentation(uv, {"uv"})) == 40);
  CHECK(census_module_variety(2, 2, parse_presentation(uv, {"uv"}, {"u", "v"})) == 10);
  CHECK(census_module_variety(2, 2, parse_presentation({"x"}, {})) == 16);
  CHECK(census_module_variety(0, 2, parse_presentation(uv, {"uv"})) == 1);
  // polynomial ring in two variables: commuting pairs
  CHECK(census_module_variety(2, 3, parse_presentation(uv, {})) == census_commuting_pairs(2, 3, Oracle::naive));
  // F_q[x]/(x^2) counts square-zero matrices
  long sq = 0;
  for (long code = 0; code < 81; ++code) {
    const auto a = oracle::matrix_from_code(2, 3, code);
    sq += oracle::is_zero(oracle::matmul_mod_p(a, a, 3));
  }
  CHECK(census_module_variety(2, 3, parse_presentation({"x"}, {"x^2"})) == Integer(sq));
  // F_q[x]/(x^q - x): diagonalizable with eigenvalues in F_q, in bijection with flags of
  // eigenspaces; for n=1 every scalar works
  CHECK(census_module_variety(1, 4, parse_presentation({"x"}, {"x^4 - x"})) == 4);
  CHECK(census_module_variety(2, 2, parse_presentation({}, {"2"})) == 1);
  CHECK(census_module_variety(2, 3, parse_presentation({}, {"2"})) == 0);
  CHECK_THROWS_AS(census_module_variety(4, 3, parse_presentation(uv, {"uv"})), TooLarge);
}

TEST_CASE("parallel workers and checkpoints give identical totals") {
  const Integer expected = census_mutually_annihilating(4, 2, Oracle::stratified);
  CensusOptions opts;
  opts.chunk = 1000;
  opts.workers = 3;
  CHECK(census_mutually_annihilating(4, 2, Oracle::stratified, opts) == expected);

  const auto dir = scratch_dir("ckpt");
  opts.workers = 2;
  opts.checkpoint_path = (dir / "run.json").string();
  opts.stop_after_chunks = 10;
  CHECK_THROWS_AS(census_mutually_annihilating(4, 2, Oracle::stratified, opts), Interrupted);
  CHECK(std::filesystem::exists(opts.checkpoint_path));
  // each resumed run advances further; the last one completes
  int resumes = 0;
  Integer got;
  for (;;) {
    try {
      got = census_mutually_annihilating(4, 2, Oracle::stratified, opts);
      break;
    } catch (const Interrupted&) {
      ++resumes;
    }
  }
  CHECK(resumes == 5);
  CHECK(got == expected);
  CHECK_FALSE(std::filesystem::exists(opts.checkpoint_path));
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_census, oracle selection, cache and JSON") {
  CensusOptions opts;
  auto r = run_census("annihilating", 2, 3, std::nullopt, std::nullopt, opts);
  REQUIRE(r.entries.size() == 4);
  CHECK(r.count(0) == 1);
  CHECK(r.count(1) == 3);
  CHECK(r.count(2) == 40);
  CHECK(r.entries[2].oracle == Oracle::stratified);
  CHECK_THROWS_AS(r.count(4), MissingCount);

  // A^1 at n = 6 is 2^36 matrices: falls back to the formula tag
  opts.budget = 1 << 20;
  auto m = run_census("matrices", 2, 6, std::nullopt, std::nullopt, opts);
  CHECK(m.entries[4].oracle == Oracle::naive);
  CHECK(m.entries[5].oracle == Oracle::formula);
  CHECK(m.count(6) == qpow(2, 36));
  CHECK_THROWS_AS(run_census("nilpotent", 2, 6, std::nullopt, std::nullopt, opts), TooLarge);
  CHECK_THROWS_AS(run_census("nilpotent", 2, 2, Oracle::formula, std::nullopt, opts), OutOfRange);
  CHECK_THROWS_AS(run_census("bogus", 2, 2, std::nullopt, std::nullopt, opts), OutOfRange);
  CHECK_THROWS_AS(run_census("annihilating", 6, 2, std::nullopt, std::nullopt, opts), UnsupportedField);

  const auto j = to_json(r);
  CHECK(j.dump() == to_json(census_from_json(j)).dump());
  CHECK(j["counts"][2]["count"] == "40");
  CHECK_FALSE(j["counts"][2].contains("seconds"));
  CHECK(to_json(r, true)["counts"][2].contains("seconds"));

  const auto pres = parse_presentation({"u", "v"}, {"uv"}, {"u", "v"});
  const auto dir = scratch_dir("cache");
  CensusCache cache(dir);
  auto mv = run_census("module-variety", 2, 2, std::nullopt, pres, CensusOptions{}, &cache);
  CHECK(mv.count(2) == 10);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 3);
  // a poisoned cache entry is returned as-is, proving the lookup path is used
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().string().find("-n2-") != std::string::npos) {
      auto doc = nlohmann::ordered_json::parse(std::ifstream(e.path()));
      doc["count"] = "12345";
      std::ofstream(e.path()) << doc.dump();
    }
  CHECK(run_census("module-variety", 2, 2, std::nullopt, pres, CensusOptions{}, &cache).count(2) == 12345);
  const auto mj = to_json(mv);
  CHECK(census_from_json(mj).presentation->canonical() == pres.canonical());
  std::filesystem::remove_all(dir);
}
