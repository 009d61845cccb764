#include "clnode/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "clnode/errors.hpp"

namespace clnode {

using nlohmann::ordered_json;

std::string to_string(Oracle o) {
  switch (o) {
    case Oracle::naive: return "naive";
    case Oracle::stratified: return "stratified";
    case Oracle::formula: return "formula";
  }
  return "naive";
}

Oracle oracle_from_string(const std::string& s) {
  if (s == "naive") return Oracle::naive;
  if (s == "stratified") return Oracle::stratified;
  if (s == "formula") return Oracle::formula;
  throw OutOfRange("unknown oracle '" + s + "'");
}

void check_budget(const std::string& what, double estimate, const CensusOptions& opts) {
  if (!(estimate <= opts.budget)) throw TooLarge(what, estimate, opts.budget);
}

namespace {

double dpow(int q, double e) { return std::pow(static_cast<double>(q), e); }

std::uint64_t upow(int q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
  return r;
}

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) throw OutOfRange("matrix dimension must lie in [0, 8]");
}

std::string key_of(const std::string& op, int n, int q, Oracle mode) {
  return op + "|n=" + std::to_string(n) + "|q=" + std::to_string(q) + "|" + to_string(mode);
}

struct Checkpoint {
  std::uint64_t next_chunk = 0;
  Integer partial = 0;
};

std::optional<Checkpoint> read_checkpoint(const std::string& path, const std::string& key, std::uint64_t total) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = ordered_json::parse(in);
    if (j.at("key").get<std::string>() != key || j.at("total").get<std::string>() != std::to_string(total))
      return std::nullopt;
    Checkpoint c;
    c.next_chunk = j.at("next_chunk").get<std::uint64_t>();
    c.partial = Integer(j.at("partial").get<std::string>());
    return c;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_checkpoint(const std::string& path, const std::string& key, std::uint64_t total,
                      std::uint64_t chunk, const Checkpoint& c) {
  ordered_json j;
  j["key"] = key;
  j["total"] = std::to_string(total);
  j["chunk"] = chunk;
  j["next_chunk"] = c.next_chunk;
  j["partial"] = c.partial.get_str();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

Integer from_u64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

// Builds a chunk function visiting every n x n matrix with indices in [b, e).
template <class Fn>
std::function<std::uint64_t(std::uint64_t, std::uint64_t)> over_matrices(int n, int q, Fn fn) {
  return [n, q, fn](std::uint64_t b, std::uint64_t e) {
    FqMatrix a = FqMatrix::from_index(n, q, b);
    std::uint64_t s = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      s += fn(a);
      a.next(q);
    }
    return s;
  };
}

template <class Fn>
std::function<std::uint64_t(std::uint64_t, std::uint64_t)> over_packed(int n, Fn fn) {
  return [n, fn](std::uint64_t b, std::uint64_t e) {
    std::uint64_t s = 0;
    for (std::uint64_t i = b; i < e; ++i) s += fn(gf2::from_index(n, i));
    return s;
  };
}

// Pairs (A, B) with pair index = index(A) + q^{n^2} index(B).
template <class Fn>
std::function<std::uint64_t(std::uint64_t, std::uint64_t)> over_pairs(int n, int q, Fn fn) {
  const std::uint64_t per = upow(q, n * n);
  return [n, q, per, fn](std::uint64_t b, std::uint64_t e) {
    FqMatrix a = FqMatrix::from_index(n, q, b % per);
    FqMatrix c = FqMatrix::from_index(n, q, b / per);
    std::uint64_t s = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      s += fn(a, c);
      if (!a.next(q)) c.next(q);
    }
    return s;
  };
}

template <class Fn>
std::function<std::uint64_t(std::uint64_t, std::uint64_t)> over_packed_pairs(int n, Fn fn) {
  const int bits = n * n;
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  return [n, bits, mask, fn](std::uint64_t b, std::uint64_t e) {
    std::uint64_t s = 0;
    for (std::uint64_t i = b; i < e; ++i) s += fn(gf2::from_index(n, i & mask), gf2::from_index(n, i >> bits));
    return s;
  };
}

Integer gaussian_binomial(int n, int k, const Integer& q) {
  if (k < 0 || k > n) return 0;
  Integer num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, static_cast<unsigned long>(n - i)) - 1;
    den *= ipow(q, static_cast<unsigned long>(i + 1)) - 1;
  }
  return num / den;
}

bool pack_ok(int q) { return q == 2; }

}  // namespace

Integer sum_over_index(std::uint64_t total, const CensusOptions& opts, const std::string& key,
                       const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& chunk_fn) {
  const std::uint64_t chunk = opts.chunk ? opts.chunk : 1;
  const std::uint64_t nchunks = total == 0 ? 0 : (total - 1) / chunk + 1;
  const bool checkpointing = !opts.checkpoint_path.empty();
  Checkpoint state;
  if (checkpointing)
    if (auto c = read_checkpoint(opts.checkpoint_path, key, total)) state = *c;
  const std::uint64_t workers = static_cast<std::uint64_t>(opts.workers > 0 ? opts.workers : 1);
  std::uint64_t ran = 0;
  while (state.next_chunk < nchunks) {
    std::uint64_t batch = std::min(workers, nchunks - state.next_chunk);
    if (opts.stop_after_chunks) batch = std::min(batch, opts.stop_after_chunks - ran);
    std::vector<std::uint64_t> parts(batch, 0);
    auto run = [&](std::uint64_t slot) {
      const std::uint64_t c = state.next_chunk + slot;
      const std::uint64_t b = c * chunk;
      parts[slot] = chunk_fn(b, std::min(total, b + chunk));
    };
    if (batch == 1) {
      run(0);
    } else {
      std::vector<std::exception_ptr> errors(batch);
      std::vector<std::thread> threads;
      for (std::uint64_t s = 0; s < batch; ++s)
        threads.emplace_back([&, s] {
          try {
            run(s);
          } catch (...) {
            errors[s] = std::current_exception();
          }
        });
      for (auto& t : threads) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (auto p : parts) state.partial += from_u64(p);
    state.next_chunk += batch;
    ran += batch;
    if (checkpointing) write_checkpoint(opts.checkpoint_path, key, total, chunk, state);
    if (opts.stop_after_chunks && ran >= opts.stop_after_chunks && state.next_chunk < nchunks)
      throw Interrupted("census stopped after " + std::to_string(ran) + " chunks");
  }
  if (checkpointing) std::filesystem::remove(opts.checkpoint_path);
  return state.partial;
}

Integer count_by_nullity(int n, int k, int q, Oracle mode, const CensusOptions& opts) {
  check_dim(n);
  if (k < 0 || k > n) throw OutOfRange("nullity k must lie in [0, n]");
  if (mode == Oracle::formula) {
    const Integer qq = q;
    const Integer qn = ipow(qq, static_cast<unsigned long>(n));
    Integer r = gaussian_binomial(n, k, qq);
    for (int j = 0; j < n - k; ++j) r *= qn - ipow(qq, static_cast<unsigned long>(j));
    return r;
  }
  return nullity_histogram(n, q, opts)[static_cast<size_t>(k)];
}

std::vector<Integer> nullity_histogram(int n, int q, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  check_budget("nullity histogram", dpow(q, n * n), opts);
  std::vector<Integer> hist(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    hist[static_cast<size_t>(k)] = sum_over_index(
        upow(q, n * n), CensusOptions{opts.workers, opts.budget, opts.chunk, "", 0},
        "nullity",
        pack_ok(q) ? over_packed(n, [n, k](gf2::Packed a) -> std::uint64_t { return n - gf2::rank(a, n) == k; })
                   : over_matrices(n, q, [&f, k](const FqMatrix& a) -> std::uint64_t { return nullity(a, f) == k; }));
  }
  return hist;
}

Integer census_mutually_annihilating(int n, int q, Oracle mode, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  const std::string key = key_of("annihilating", n, q, mode);
  switch (mode) {
    case Oracle::formula: {
      Integer total = 0;
      for (int k = 0; k <= n; ++k)
        total += count_by_nullity(n, k, q, Oracle::formula) * ipow(Integer(q), static_cast<unsigned long>(k * k));
      return total;
    }
    case Oracle::naive: {
      check_budget("naive annihilating census", dpow(q, 2 * n * n), opts);
      if (pack_ok(q))
        return sum_over_index(upow(q, 2 * n * n), opts, key,
                              over_packed_pairs(n, [n](gf2::Packed a, gf2::Packed b) -> std::uint64_t {
                                return gf2::multiply(a, b, n) == 0 && gf2::multiply(b, a, n) == 0;
                              }));
      return sum_over_index(upow(q, 2 * n * n), opts, key,
                            over_pairs(n, q, [&f](const FqMatrix& a, const FqMatrix& b) -> std::uint64_t {
                              return multiply(a, b, f).is_zero() && multiply(b, a, f).is_zero();
                            }));
    }
    case Oracle::stratified: {
      check_budget("stratified annihilating census", dpow(q, n * n), opts);
      std::vector<std::uint64_t> weight(static_cast<size_t>(n + 1));
      for (int k = 0; k <= n; ++k) weight[static_cast<size_t>(k)] = upow(q, k * k);
      if (pack_ok(q))
        return sum_over_index(upow(q, n * n), opts, key, over_packed(n, [n, weight](gf2::Packed a) {
                                return weight[static_cast<size_t>(n - gf2::rank(a, n))];
                              }));
      return sum_over_index(upow(q, n * n), opts, key, over_matrices(n, q, [&f, weight](const FqMatrix& a) {
                              return weight[static_cast<size_t>(nullity(a, f))];
                            }));
    }
  }
  return 0;
}

Integer census_nilpotent_mutually_annihilating(int n, int q, Oracle mode, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  const std::string key = key_of("nilpotent-pair", n, q, mode);
  if (mode == Oracle::naive) {
    check_budget("naive nilpotent-pair census", dpow(q, 2 * n * n), opts);
    return sum_over_index(upow(q, 2 * n * n), opts, key,
                          over_pairs(n, q, [&f](const FqMatrix& a, const FqMatrix& b) -> std::uint64_t {
                            return multiply(a, b, f).is_zero() && multiply(b, a, f).is_zero() &&
                                   is_nilpotent(a, f) && is_nilpotent(b, f);
                          }));
  }
  if (mode != Oracle::stratified) throw OutOfRange("nilpotent-pair census has no " + to_string(mode) + " mode");
  // every A is scanned once, then B runs over Hom(F^n / im A, ker A)
  double estimate = dpow(q, n * n);
  for (int k = 0; k <= n; ++k)
    estimate += count_by_nullity(n, k, q, Oracle::formula).get_d() * dpow(q, k * k);
  check_budget("nilpotent-pair census", estimate, opts);
  return sum_over_index(upow(q, n * n), opts, key, over_matrices(n, q, [&f, n, q](const FqMatrix& a) {
    if (!is_nilpotent(a, f)) return std::uint64_t{0};
    const auto ker = kernel_basis(a, f);
    const auto left = left_kernel_basis(a, f);
    const int k = static_cast<int>(ker.size());
    // B = sum_{a,b} c_{ab} ker_a left_b^T, injective in c
    FqMatrix c(k);
    std::uint64_t count = 0;
    do {
      FqMatrix b(n);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
          const Fq::Elem coeff = c(x, y);
          if (!coeff) continue;
          for (int i = 0; i < n; ++i) {
            const Fq::Elem u = f.mul(coeff, ker[static_cast<size_t>(x)][static_cast<size_t>(i)]);
            if (!u) continue;
            for (int j = 0; j < n; ++j)
              b(i, j) = f.add(b(i, j), f.mul(u, left[static_cast<size_t>(y)][static_cast<size_t>(j)]));
          }
        }
      count += is_nilpotent(b, f);
    } while (c.next(q));
    return count;
  }));
}

Integer census_nilpotent(int n, int q, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  check_budget("nilpotent census", dpow(q, n * n), opts);
  const std::string key = key_of("nilpotent", n, q, Oracle::naive);
  if (pack_ok(q))
    return sum_over_index(upow(q, n * n), opts, key,
                          over_packed(n, [n](gf2::Packed a) -> std::uint64_t { return gf2::is_nilpotent(a, n); }));
  return sum_over_index(upow(q, n * n), opts, key,
                        over_matrices(n, q, [&f](const FqMatrix& a) -> std::uint64_t { return is_nilpotent(a, f); }));
}

Integer census_commuting_pairs(int n, int q, Oracle mode, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  const std::string key = key_of("commuting", n, q, mode);
  if (mode == Oracle::naive) {
    check_budget("naive commuting census", dpow(q, 2 * n * n), opts);
    if (pack_ok(q))
      return sum_over_index(upow(q, 2 * n * n), opts, key,
                            over_packed_pairs(n, [n](gf2::Packed a, gf2::Packed b) -> std::uint64_t {
                              return gf2::multiply(a, b, n) == gf2::multiply(b, a, n);
                            }));
    return sum_over_index(upow(q, 2 * n * n), opts, key,
                          over_pairs(n, q, [&f](const FqMatrix& a, const FqMatrix& b) -> std::uint64_t {
                            return multiply(a, b, f) == multiply(b, a, f);
                          }));
  }
  if (mode != Oracle::stratified) throw OutOfRange("commuting census has no " + to_string(mode) + " mode");
  check_budget("stratified commuting census", dpow(q, n * n), opts);
  std::vector<std::uint64_t> weight(static_cast<size_t>(n * n + 1));
  for (int d = 0; d <= n * n; ++d) weight[static_cast<size_t>(d)] = upow(q, d);
  return sum_over_index(upow(q, n * n), opts, key, over_matrices(n, q, [&f, weight](const FqMatrix& a) {
                          return weight[static_cast<size_t>(commutant_dimension(a, f))];
                        }));
}

namespace {

// Number of B with AB = I and BA = I, found by solving AB = I and walking
// the affine solution space B0 + {X : AX = 0}.
std::uint64_t two_sided_inverses(const FqMatrix& a, const Fq& f, int q) {
  const int n = a.n();
  std::vector<std::vector<Fq::Elem>> m(static_cast<size_t>(n), std::vector<Fq::Elem>(static_cast<size_t>(2 * n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);
    m[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
  }
  // row reduce on the left block only
  std::vector<int> pivots;
  size_t row = 0;
  for (int c = 0; c < n && row < m.size(); ++c) {
    size_t piv = row;
    while (piv < m.size() && m[piv][static_cast<size_t>(c)] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const Fq::Elem inv = f.inv(m[row][static_cast<size_t>(c)]);
    for (auto& e : m[row]) e = f.mul(e, inv);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || !m[r][static_cast<size_t>(c)]) continue;
      const Fq::Elem factor = m[r][static_cast<size_t>(c)];
      for (int k = 0; k < 2 * n; ++k)
        m[r][static_cast<size_t>(k)] = f.sub(m[r][static_cast<size_t>(k)], f.mul(factor, m[row][static_cast<size_t>(k)]));
    }
    pivots.push_back(c);
    ++row;
  }
  for (size_t r = pivots.size(); r < m.size(); ++r)
    for (int k = n; k < 2 * n; ++k)
      if (m[r][static_cast<size_t>(k)]) return 0;  // inconsistent
  FqMatrix b0(n);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < n; ++j) b0(pivots[r], j) = m[r][static_cast<size_t>(n + j)];
  const auto ker = kernel_basis(a, f);
  const int k = static_cast<int>(ker.size());
  const FqMatrix id = FqMatrix::identity(n);
  // each column of B may move by any kernel vector: coefficients form a k x n block
  std::vector<Fq::Elem> coeff(static_cast<size_t>(k * n), 0);
  std::uint64_t count = 0;
  for (;;) {
    FqMatrix b = b0;
    for (int x = 0; x < k; ++x)
      for (int j = 0; j < n; ++j) {
        const Fq::Elem c = coeff[static_cast<size_t>(x * n + j)];
        if (!c) continue;
        for (int i = 0; i < n; ++i) b(i, j) = f.add(b(i, j), f.mul(c, ker[static_cast<size_t>(x)][static_cast<size_t>(i)]));
      }
    count += multiply(b, a, f) == id;
    size_t pos = 0;
    while (pos < coeff.size() && ++coeff[pos] == q) coeff[pos++] = 0;
    if (pos == coeff.size()) break;
  }
  return count;
}

}  // namespace

Integer census_invertible_pairs_ab_eq_i(int n, int q, Oracle mode, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  const std::string key = key_of("invertible-pair", n, q, mode);
  switch (mode) {
    case Oracle::formula:
      return gl_order(n, q);
    case Oracle::naive: {
      check_budget("naive invertible-pair census", dpow(q, 2 * n * n), opts);
      const FqMatrix id = FqMatrix::identity(n);
      return sum_over_index(upow(q, 2 * n * n), opts, key,
                            over_pairs(n, q, [&f, id](const FqMatrix& a, const FqMatrix& b) -> std::uint64_t {
                              return multiply(a, b, f) == id && multiply(b, a, f) == id;
                            }));
    }
    case Oracle::stratified:
      check_budget("invertible-pair census", dpow(q, n * n), opts);
      return sum_over_index(upow(q, n * n), opts, key,
                            over_matrices(n, q, [&f, q](const FqMatrix& a) { return two_sided_inverses(a, f, q); }));
  }
  return 0;
}

Integer census_module_variety(int n, int q, const Presentation& pres, const CensusOptions& opts) {
  check_dim(n);
  const Fq& f = Fq::get(q);
  const int m = pres.arity();
  if (m == 0) {
    // no variables: a single point, present iff every relation vanishes on F_q^n
    auto vanishes = [&](const Polynomial& p) {
      if (n == 0 || p.is_zero()) return true;
      return mpz_divisible_ui_p(p.terms.begin()->second.get_mpz_t(), static_cast<unsigned long>(f.characteristic())) != 0;
    };
    for (const auto& r : pres.relations)
      if (!vanishes(r)) return 0;
    return 1;
  }
  check_budget("module variety census", m * dpow(q, m * n * n), opts);
  const std::uint64_t per = upow(q, n * n);
  const std::string key = "module-variety|n=" + std::to_string(n) + "|q=" + std::to_string(q) + "|" +
                          std::to_string(pres.hash());
  return sum_over_index(upow(q, m * n * n), opts, key, [&, m, n, q, per](std::uint64_t b, std::uint64_t e) {
    std::vector<FqMatrix> tuple;
    std::uint64_t rest = b;
    for (int i = 0; i < m; ++i) {
      tuple.push_back(FqMatrix::from_index(n, q, rest % per));
      rest /= per;
    }
    std::uint64_t count = 0;
    for (std::uint64_t idx = b; idx < e; ++idx) {
      bool ok = true;
      for (int i = 0; ok && i < m; ++i)
        for (int j = i + 1; ok && j < m; ++j)
          ok = multiply(tuple[static_cast<size_t>(i)], tuple[static_cast<size_t>(j)], f) ==
               multiply(tuple[static_cast<size_t>(j)], tuple[static_cast<size_t>(i)], f);
      for (size_t r = 0; ok && r < pres.relations.size(); ++r) ok = evaluate(pres.relations[r], tuple, f).is_zero();
      for (size_t g = 0; ok && g < pres.nilpotent.size(); ++g) ok = is_nilpotent(evaluate(pres.nilpotent[g], tuple, f), f);
      count += ok;
      for (int i = 0; i < m && !tuple[static_cast<size_t>(i)].next(q); ++i) {
      }
    }
    return count;
  });
}

Integer count_annihilators(const FqMatrix& a, const Fq& f) {
  const int n = a.n();
  FqMatrix b(n);
  Integer count = 0;
  do {
    if (multiply(a, b, f).is_zero() && multiply(b, a, f).is_zero()) ++count;
  } while (b.next(f.q()));
  return count;
}

const Integer& CensusResult::count(int n) const {
  if (n < 0 || n >= static_cast<int>(entries.size()))
    throw MissingCount("census '" + op + "' has no count for n=" + std::to_string(n));
  return entries[static_cast<size_t>(n)].count;
}

std::filesystem::path CensusCache::default_dir() {
  if (const char* env = std::getenv("CLNODE_CACHE_DIR"); env && *env) return env;
  return ".clnode-cache";
}

std::filesystem::path CensusCache::file(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash) const {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(pres_hash));
  return dir_ / (op + "-n" + std::to_string(n) + "-q" + std::to_string(q) + "-" + to_string(mode) + "-" + hash + ".json");
}

std::optional<Integer> CensusCache::load(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash) const {
  std::ifstream in(file(op, n, q, mode, pres_hash));
  if (!in) return std::nullopt;
  try {
    const auto j = ordered_json::parse(in);
    if (j.at("op") != op || j.at("n") != n || j.at("q") != q || j.at("oracle") != to_string(mode)) return std::nullopt;
    return Integer(j.at("count").get<std::string>());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void CensusCache::store(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash,
                        const Integer& count) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto path = file(op, n, q, mode, pres_hash);
  ordered_json j;
  j["op"] = op;
  j["n"] = n;
  j["q"] = q;
  j["oracle"] = to_string(mode);
  j["presentation_hash"] = path.stem().string().substr(path.stem().string().size() - 16);
  j["count"] = count.get_str();
  std::ofstream out(path, std::ios::trunc);
  if (out) out << j.dump() << "\n";
}

namespace {

std::vector<Oracle> modes_for(const std::string& op) {
  if (op == "annihilating") return {Oracle::stratified, Oracle::naive, Oracle::formula};
  if (op == "nilpotent-pair") return {Oracle::stratified, Oracle::naive};
  if (op == "nilpotent") return {Oracle::naive};
  if (op == "commuting") return {Oracle::stratified, Oracle::naive};
  if (op == "invertible-pair") return {Oracle::stratified, Oracle::naive, Oracle::formula};
  if (op == "matrices") return {Oracle::naive, Oracle::formula};
  if (op == "module-variety") return {Oracle::naive};
  throw OutOfRange("unknown census op '" + op + "'");
}

Integer compute(const std::string& op, int n, int q, Oracle mode, const std::optional<Presentation>& pres,
                const CensusOptions& opts) {
  if (op == "annihilating") return census_mutually_annihilating(n, q, mode, opts);
  if (op == "nilpotent-pair") return census_nilpotent_mutually_annihilating(n, q, mode, opts);
  if (op == "nilpotent") return census_nilpotent(n, q, opts);
  if (op == "commuting") return census_commuting_pairs(n, q, mode, opts);
  if (op == "invertible-pair") return census_invertible_pairs_ab_eq_i(n, q, mode, opts);
  if (op == "matrices") {
    if (mode == Oracle::formula) return ipow(Integer(q), static_cast<unsigned long>(n * n));
    return census_module_variety(n, q, parse_presentation({"x"}, {}), opts);
  }
  if (!pres) throw UnsupportedPresentation("module-variety census needs a presentation");
  return census_module_variety(n, q, *pres, opts);
}

}  // namespace

CensusResult run_census(const std::string& op, int q, int n_max, std::optional<Oracle> mode,
                        const std::optional<Presentation>& pres, const CensusOptions& opts,
                        const CensusCache* cache) {
  const auto available = modes_for(op);
  if (mode && std::find(available.begin(), available.end(), *mode) == available.end())
    throw OutOfRange("census '" + op + "' has no " + to_string(*mode) + " mode");
  if (n_max < 0) throw OutOfRange("n_max must be >= 0");
  Fq::get(q);
  const auto wall_start = std::chrono::steady_clock::now();
  CensusResult result;
  result.op = op;
  result.q = q;
  if (op == "module-variety") result.presentation = pres;
  const std::uint64_t hash = (op == "module-variety" && pres) ? pres->hash() : 0;
  // largest n first: costs grow with n, so a refusal comes before any work
  for (int n = n_max; n >= 0; --n) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Oracle> tries = mode ? std::vector<Oracle>{*mode} : available;
    std::optional<CensusEntry> entry;
    for (size_t i = 0; i < tries.size() && !entry; ++i) {
      const Oracle o = tries[i];
      if (cache)
        if (auto hit = cache->load(op, n, q, o, hash)) {
          entry = CensusEntry{n, *hit, o, 0};
          break;
        }
      try {
        Integer c = compute(op, n, q, o, pres, opts);
        if (cache) cache->store(op, n, q, o, hash, c);
        entry = CensusEntry{n, std::move(c), o, 0};
      } catch (const TooLarge&) {
        if (i + 1 == tries.size()) throw;
      }
    }
    entry->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.entries.push_back(std::move(*entry));
  }
  std::reverse(result.entries.begin(), result.entries.end());
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

ordered_json to_json(const CensusResult& r, bool include_timing) {
  ordered_json j;
  j["op"] = r.op;
  j["q"] = r.q;
  if (r.presentation) {
    ordered_json p;
    p["variables"] = r.presentation->variables;
    auto& rel = p["relations"] = ordered_json::array();
    for (const auto& f : r.presentation->relations) rel.push_back(f.str(r.presentation->variables));
    auto& nil = p["nilpotent"] = ordered_json::array();
    for (const auto& g : r.presentation->nilpotent) nil.push_back(g.str(r.presentation->variables));
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.presentation->hash()));
    p["hash"] = hash;
    j["presentation"] = p;
  } else {
    j["presentation"] = nullptr;
  }
  auto& counts = j["counts"] = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json c;
    c["n"] = e.n;
    c["count"] = e.count.get_str();
    c["oracle"] = to_string(e.oracle);
    if (include_timing) c["seconds"] = e.seconds;
    counts.push_back(c);
  }
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

CensusResult census_from_json(const ordered_json& j) {
  CensusResult r;
  try {
    r.op = j.at("op").get<std::string>();
    r.q = j.at("q").get<int>();
    if (j.contains("presentation") && !j.at("presentation").is_null()) {
      const auto& p = j.at("presentation");
      r.presentation = parse_presentation(p.at("variables").get<std::vector<std::string>>(),
                                          p.at("relations").get<std::vector<std::string>>(),
                                          p.at("nilpotent").get<std::vector<std::string>>());
    }
    for (const auto& c : j.at("counts")) {
      CensusEntry e;
      e.n = c.at("n").get<int>();
      e.count = Integer(c.at("count").get<std::string>());
      e.oracle = oracle_from_string(c.at("oracle").get<std::string>());
      if (c.contains("seconds")) e.seconds = c.at("seconds").get<double>();
      if (e.n != static_cast<int>(r.entries.size())) throw MissingCount("census counts must be listed for n = 0, 1, 2, ...");
      r.entries.push_back(std::move(e));
    }
    if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed census JSON: ") + e.what());
  }
  return r;
}

}  // namespace clnode
