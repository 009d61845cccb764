#pragma once

#include <string>
#include <vector>

#include "clnode/census.hpp"
#include "clnode/qseries.hpp"
#include "clnode/report.hpp"

namespace clnode {

struct Provenance {
  enum class Kind { census, formula } kind = Kind::formula;
  std::string name;                 // census op or formula name
  std::vector<std::string> oracles;  // per-n oracle tags when census-derived
};

/// Cohen-Lenstra series: sum over n of |M_n| / |GL_n(F_q)| x^n when built
/// from a census, or a named closed form.
template <class Ring>
struct CLSeries {
  TruncSeries<Ring> series;
  Provenance provenance;
};

// Coefficients |M_n| / |GL_n| for n <= N (default: every census entry).
// Throws MissingCount if the census stops short of N.
CLSeries<NumericQ> cl_from_census(const CensusResult& census, int N = -1);

template <class Ring>
CLSeries<Ring> cl_from_formula(std::string name, TruncSeries<Ring> f) {
  return CLSeries<Ring>{std::move(f), Provenance{Provenance::Kind::formula, std::move(name), {}}};
}

/// global = open_part * local_part, compared coefficient by coefficient.
template <class Ring>
Report euler_quotient_check(const CLSeries<Ring>& global, const CLSeries<Ring>& open_part,
                            const CLSeries<Ring>& local_part) {
  auto r = compare_series("euler-quotient", "Z(X) = Z(U) * Z(X, Z)", global.series,
                          open_part.series * local_part.series);
  r.name = "euler-quotient";
  return r;
}

/// Rational function numerator / denominator in x with integer coefficients
/// (low degree first) at a fixed q.
struct HasseWeilZeta {
  std::string name;
  Integer q;
  std::vector<Integer> numerator;
  std::vector<Integer> denominator;

  TruncSeries<NumericQ> expand(int N) const;
  // N_m = |X(F_{q^m})| for m = 1..m_max, read off from log Z.
  std::vector<Integer> point_counts(int m_max) const;
};

inline const std::vector<std::string>& hasse_weil_presets() {
  static const std::vector<std::string> names{"A1", "A1-minus-point", "P1", "A2"};
  return names;
}

// Throws UnknownPreset for other names.
HasseWeilZeta hasse_weil(const std::string& preset, const Integer& q);

// prod_{i>=1} Z(t^i x), via log: sum_m N_m/m * t^m/(1-t^m) x^m.
TruncSeries<NumericQ> curve_product(const HasseWeilZeta& z, int N);
// prod_{i,j>=1} Z(t^j x^i).
TruncSeries<NumericQ> surface_product(const HasseWeilZeta& z, int N);

enum class ProductKind { curve, surface };

/// Compares the product formula against an independently built series:
/// A1 from the census of all matrices, A1-minus-point from the AB = BA = I
/// census, P1 as the A1 census times the local factor at the point at
/// infinity, A2 from the commuting-pair census. Counts above the budget are
/// left out with a warning.
Report smooth_product_check(ProductKind kind, const std::string& preset, int q, int N,
                            const CensusOptions& opts = {}, const CensusCache* cache = nullptr);

struct NodeOptions {
  bool use_census = true;
  CensusOptions census;
  const CensusCache* cache = nullptr;
};

/// Mutually annihilating pairs: census and rank-stratified formula against
/// (x;t)^{-2} H, nilpotent-pair census against (xt;t)^{-2} H, and the Euler
/// quotient between the two. Symbolic mode skips the censuses.
Report node_pipeline(int N, const NumericQ& ring, const NodeOptions& opts = {});
Report node_pipeline(int N, const SymbolicT& ring);

}  // namespace clnode
