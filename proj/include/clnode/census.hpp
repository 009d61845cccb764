#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "clnode/fq_matrix.hpp"
#include "clnode/presentation.hpp"
#include "clnode/rational.hpp"

namespace clnode {

enum class Oracle { naive, stratified, formula };

std::string to_string(Oracle o);
Oracle oracle_from_string(const std::string& s);

struct CensusOptions {
  int workers = 1;
  double budget = 17179869184.0;  // 2^34 iterations
  std::uint64_t chunk = std::uint64_t{1} << 24;
  // Resumable progress file; empty disables checkpointing.
  std::string checkpoint_path;
  // Stop with Interrupted after this many chunks (0 = run to completion).
  std::uint64_t stop_after_chunks = 0;
};

// Throws TooLarge when estimate > budget.
void check_budget(const std::string& what, double estimate, const CensusOptions& opts);

// Sum of chunk_fn(begin, end) over [0, total) split into opts.chunk sized
// pieces. Chunks run on opts.workers threads and are combined in index
// order, so the total does not depend on scheduling.
Integer sum_over_index(std::uint64_t total, const CensusOptions& opts, const std::string& key,
                       const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& chunk_fn);

Integer count_by_nullity(int n, int k, int q, Oracle mode = Oracle::formula,
                         const CensusOptions& opts = {});
// Brute-force histogram: entry k counts matrices of nullity k.
std::vector<Integer> nullity_histogram(int n, int q, const CensusOptions& opts = {});

// Pairs with AB = BA = 0. Modes: naive, stratified, formula.
Integer census_mutually_annihilating(int n, int q, Oracle mode, const CensusOptions& opts = {});
// Nilpotent pairs with AB = BA = 0. Modes: stratified (B built from kernel
// bases of A), naive.
Integer census_nilpotent_mutually_annihilating(int n, int q, Oracle mode = Oracle::stratified,
                                               const CensusOptions& opts = {});
Integer census_nilpotent(int n, int q, const CensusOptions& opts = {});
// Modes: naive, stratified (sum of q^{dim commutant}).
Integer census_commuting_pairs(int n, int q, Oracle mode = Oracle::stratified,
                               const CensusOptions& opts = {});
// Pairs with AB = BA = I. Modes: naive, stratified (solve AB = I per A), formula.
Integer census_invertible_pairs_ab_eq_i(int n, int q, Oracle mode = Oracle::stratified,
                                        const CensusOptions& opts = {});
// Commuting tuples satisfying the relations with the marked generators nilpotent.
Integer census_module_variety(int n, int q, const Presentation& pres, const CensusOptions& opts = {});

// #{B : AB = BA = 0} by looping over every B.
Integer count_annihilators(const FqMatrix& a, const Fq& f);

struct CensusEntry {
  int n = 0;
  Integer count;
  Oracle oracle = Oracle::naive;
  double seconds = 0;
};

struct CensusResult {
  std::string op;
  int q = 0;
  std::optional<Presentation> presentation;
  std::vector<CensusEntry> entries;  // entries[n] for n = 0..N
  double wall_seconds = 0;

  const Integer& count(int n) const;  // MissingCount if absent
  int max_n() const { return static_cast<int>(entries.size()) - 1; }
};

inline const std::vector<std::string>& census_ops() {
  static const std::vector<std::string> ops{"annihilating", "nilpotent-pair", "nilpotent", "commuting",
                                            "invertible-pair", "matrices", "module-variety"};
  return ops;
}

// On-disk cache of single counts keyed by op, n, q, oracle and presentation hash.
class CensusCache {
 public:
  explicit CensusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  // CLNODE_CACHE_DIR if set, else ".clnode-cache" in the working directory.
  static std::filesystem::path default_dir();

  std::optional<Integer> load(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash) const;
  void store(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash, const Integer& count) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path file(const std::string& op, int n, int q, Oracle mode, std::uint64_t pres_hash) const;
  std::filesystem::path dir_;
};

// Counts for n = 0..n_max. With no explicit mode each n uses the cheapest
// exact oracle within budget: stratified, then naive, then formula.
CensusResult run_census(const std::string& op, int q, int n_max, std::optional<Oracle> mode,
                        const std::optional<Presentation>& pres, const CensusOptions& opts,
                        const CensusCache* cache = nullptr);

// Counts as decimal strings; timings only when requested so that output is
// reproducible byte for byte.
nlohmann::ordered_json to_json(const CensusResult& r, bool include_timing = false);
CensusResult census_from_json(const nlohmann::ordered_json& j);

}  // namespace clnode
