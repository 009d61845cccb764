#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clnode/cli.hpp"
#include "clnode/json_io.hpp"

using namespace clnode;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Every test gets a fresh cache directory.
struct CacheDir {
  fs::path dir;
  CacheDir() {
    dir = fs::temp_directory_path() / ("clnode-cli-test-" + std::to_string(std::rand()));
    fs::remove_all(dir);
    setenv("CLNODE_CACHE_DIR", dir.c_str(), 1);
  }
  ~CacheDir() { fs::remove_all(dir); }
};

std::string count_at(const Json& j, int n) { return j["counts"][static_cast<size_t>(n)]["count"].get<std::string>(); }

}  // namespace

TEST_CASE("census command") {
  CacheDir cache;
  auto r = run({"census", "annihilating", "-n", "2", "-q", "2"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(count_at(j, 2) == "40");
  CHECK(j["presentation"].is_null());
  CHECK(j.find("wall_seconds") == j.end());

  CHECK(count_at(Json::parse(run({"census", "annihilating", "-n", "0", "-q", "3"}).out), 0) == "1");
  CHECK(count_at(Json::parse(run({"census", "nilpotent-pair", "-n", "2", "-q", "2"}).out), 2) == "10");

  // second run is served from the cache and must not differ by a byte
  CHECK(fs::exists(cache.dir));
  CHECK(run({"census", "annihilating", "-n", "2", "-q", "2"}).out == r.out);
  CHECK(run({"census", "annihilating", "-n", "2", "-q", "2", "--no-cache"}).out == r.out);

  const auto timed = Json::parse(run({"census", "annihilating", "-n", "1", "-q", "2", "--timings"}).out);
  CHECK(timed.contains("wall_seconds"));

  const auto mv = run({"census", "module-variety", "-n", "2", "-q", "2", "--vars", "u,v", "--rel", "uv", "--rel", "vu"});
  REQUIRE(mv.code == kExitOk);
  CHECK(count_at(Json::parse(mv.out), 2) == "40");
}

TEST_CASE("census exit codes") {
  CacheDir cache;
  const auto big = run({"census", "annihilating", "-n", "7", "-q", "2", "--mode", "naive"});
  CHECK(big.code == kExitRefused);
  CHECK(big.out.empty());
  CHECK(run({"census", "annihilating", "-n", "3", "-q", "2", "--budget", "10", "--mode", "naive"}).code ==
        kExitRefused);
  CHECK(run({"census", "bogus", "-n", "2", "-q", "2"}).code == kExitUsage);
  CHECK(run({"census", "annihilating", "-q", "2"}).code == kExitUsage);
  CHECK(run({"census", "annihilating", "-n", "2", "-q", "6"}).code == kExitUsage);
  CHECK(run({"census", "annihilating", "-n", "-1", "-q", "2"}).code == kExitUsage);
  CHECK(run({"census", "module-variety", "-n", "1", "-q", "2", "--vars", "u", "--rel", "u/2"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("series command") {
  const auto local = run({"series", "node-local", "-q", "2", "-N", "4"});
  REQUIRE(local.code == kExitOk);
  const auto j = Json::parse(local.out);
  CHECK(j["mode"] == "numeric");
  CHECK(j["coeffs"][2] == Json::array({"5", "3"}));

  const auto csv = run({"series", "node-local", "-q", "2", "-N", "4", "--format", "csv"});
  CHECK(csv.out.find("2,5,3\n") != std::string::npos);

  const auto th = Json::parse(run({"series", "theta", "--symbolic", "-N", "8", "-T", "70"}).out);
  const auto& x2 = th["coeffs"][2];
  for (size_t i = 0; i < x2.size(); ++i)
    CHECK(x2[i] == (i == 4 ? Json::array({"1", "1"}) : Json::array({"0", "1"})));

  const auto h = Json::parse(run({"series", "H", "--symbolic", "-N", "12", "-T", "40"}).out);
  CHECK(h["coeffs"].size() == 13);
  CHECK(h["coeffs"][0][0] == Json::array({"1", "1"}));

  CHECK(run({"series", "H", "-q", "6"}).code == kExitUsage);
  CHECK(run({"series", "H", "-N", "-2"}).code == kExitUsage);
  CHECK(run({"series", "nope"}).code == kExitUsage);
  CHECK(run({"series", "H", "-N", "6"}).out == run({"series", "H", "-N", "6"}).out);
}

TEST_CASE("verify command") {
  CacheDir cache;
  const auto b = run({"verify", "thmB", "-q", "2", "-N", "4"});
  CHECK(b.code == kExitOk);
  const auto cert = Json::parse(b.out);
  CHECK(cert["status"] == "pass");
  CHECK(cert["failed-count"] == 0);
  CHECK(cert["checks"].size() == cert["check-count"].get<size_t>());
  CHECK(cert["checks"][0].contains("paper-ref"));

  const auto e = run({"verify", "euler-identities", "-T", "100"});
  CHECK(e.code == kExitOk);
  CHECK(e.out == run({"verify", "euler-identities", "-T", "100"}).out);

  // the valuation conjecture holds at this size, so strict mode passes too
  CHECK(run({"verify", "special-values", "-T", "40", "--strict-conjectures"}).code == kExitOk);
  CHECK(run({"verify", "everything"}).code == kExitUsage);
}

TEST_CASE("analytic command") {
  const auto one = run({"analytic", "eval", "-x", "1", "-t", "0.5"});
  REQUIRE(one.code == kExitOk);
  CHECK(one.out.find("\n1.0000000000000000000e+00,0.0000000000000000000e+00,1.0000000000000000000e+00,") !=
        std::string::npos);
  const auto zero = run({"analytic", "eval", "-x", "0", "-t", "0.9"});
  CHECK(zero.out.find(",1.0000000000000000000e+00,0.0000000000000000000e+00,0.00000e+00,1\n") != std::string::npos);

  const auto val = run({"analytic", "valuations", "-N", "20"});
  CHECK(val.code == kExitOk);
  CHECK(val.out.find("20,100,100,+,true\n") != std::string::npos);
  CHECK(run({"analytic", "valuations", "-N", "20", "-T", "50"}).code == kExitUsage);

  const auto pos = run({"analytic", "positivity", "-t", "0.5", "--grid", "4"});
  CHECK(pos.code == kExitOk);
  CHECK(pos.out.find("false") == std::string::npos);

  const auto tr = run({"analytic", "smoothness", "--target", "Theta", "-t", "0.5", "--n-max", "4"});
  CHECK(tr.code == kExitOk);
  CHECK(std::count(tr.out.begin(), tr.out.end(), '\n') == 1 + 3);

  const auto roots = run({"analytic", "roots", "--function", "H", "-t", "0.5", "--box", "0.01", "1.99", "0", "0"});
  CHECK(roots.code == kExitOk);
  CHECK(roots.out == "re,im,radius,multiplicity,evidence,real_part_small\n");

  CHECK(run({"analytic", "eval", "-x", "1", "-t", "1.5"}).code == kExitUsage);
  CHECK(run({"analytic", "eval", "-x", "abc"}).code == kExitUsage);
  CHECK(run({"analytic", "eval", "-x", "1", "--tolerance", "1e-300", "--prec", "64"}).code == kExitRefused);
}

TEST_CASE("output file") {
  const auto path = fs::temp_directory_path() / "clnode-cli-test-out.json";
  fs::remove(path);
  CHECK(run({"-o", path.string(), "series", "H", "-q", "3", "-N", "3"}).out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == run({"series", "H", "-q", "3", "-N", "3"}).out);
  fs::remove(path);
}
