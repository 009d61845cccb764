#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clnode/fq_matrix.hpp"
#include "clnode/rational.hpp"

namespace clnode {

// Polynomial with integer coefficients in commuting variables, keyed by
// exponent vectors. Coefficients map into the prime subfield on evaluation.
struct Polynomial {
  std::map<std::vector<int>, Integer> terms;

  bool is_zero() const { return terms.empty(); }
  std::string str(const std::vector<std::string>& vars) const;
};

/// A finitely presented commutative F_q-algebra F_q[x_1..x_m]/(f_1..f_r)
/// together with generators g that are required to act nilpotently.
struct Presentation {
  std::vector<std::string> variables;
  std::vector<Polynomial> relations;
  std::vector<Polynomial> nilpotent;

  int arity() const { return static_cast<int>(variables.size()); }
  // Normal form used for hashing and serialization.
  std::string canonical() const;
  std::uint64_t hash() const;
};

// Parses relation and nilpotency strings over the given variables. Accepts
// integers, variables, + - *, ^ with a nonnegative integer exponent,
// parentheses and juxtaposition ("uv", "2 u v"). Anything else throws
// UnsupportedPresentation.
Presentation parse_presentation(const std::vector<std::string>& variables,
                                const std::vector<std::string>& relations,
                                const std::vector<std::string>& nilpotent = {});
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

// f(A_1, ..., A_m) for pairwise commuting matrices.
FqMatrix evaluate(const Polynomial& f, const std::vector<FqMatrix>& values, const Fq& field);

std::uint64_t fnv1a(const std::string& s);

}  // namespace clnode
