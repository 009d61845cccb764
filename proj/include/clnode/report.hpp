#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clnode/json_io.hpp"

namespace clnode {

/// One compared quantity in a verification certificate.
struct Check {
  std::string id;
  std::string ref;  // the statement being checked, in words/formula
  Json lhs;
  Json rhs;
  bool pass = false;
  bool conjectural = false;
};

/// A list of checks plus warnings. Conjectural checks are recorded but do
/// not affect passed() unless strict is requested.
struct Report {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool passed(bool strict_conjectures = false) const;
  const Check* first_failure(bool strict_conjectures = false) const;
  void append(const Report& other);
  void add(std::string id, std::string ref, Json lhs, Json rhs, bool pass, bool conjectural = false);
};

// {"suite", "status", "checks": [{"check-id", "paper-ref", "lhs", "rhs", "status"}], "warnings"}
Json certificate_json(const Report& r, bool strict_conjectures = false);

/// Coefficient-wise comparison of two series, one check per x^n.
template <class Ring>
Report compare_series(const std::string& id_prefix, const std::string& ref, const TruncSeries<Ring>& lhs,
                      const TruncSeries<Ring>& rhs) {
  Report r;
  r.name = id_prefix;
  const int N = std::min(lhs.order(), rhs.order());
  for (int n = 0; n <= N; ++n)
    r.add(id_prefix + "/x^" + std::to_string(n), ref, scalar_json(lhs[n]), scalar_json(rhs[n]), lhs[n] == rhs[n]);
  return r;
}

}  // namespace clnode
