#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "clnode/rational.hpp"
#include "clnode/trunc_series.hpp"
#include "clnode/tseries.hpp"

namespace clnode {

using Json = nlohmann::ordered_json;

// {"num": "...", "den": "..."}
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);
// ["num", "den"], the compact form used inside series coefficient lists.
Json rational_pair(const Rational& r);
Rational rational_from_pair(const Json& j);

// {"T": T, "coeffs": [{"num","den"}, ...]}
Json scalar_json(const Rational& r);
Json scalar_json(const TSeries& s);

/// Series document:
///   {"mode": "numeric", "q": "2", "N": N, "coeffs": [["num","den"], ...]}
///   {"mode": "symbolic", "T": T, "N": N, "coeffs": [[["num","den"], ...], ...]}
/// Symbolic coefficients list t^0..t^T.
Json series_json(const TruncSeries<NumericQ>& f);
Json series_json(const TruncSeries<SymbolicT>& f);
TruncSeries<NumericQ> numeric_series_from_json(const Json& j);
TruncSeries<SymbolicT> symbolic_series_from_json(const Json& j);

// CSV with header "n,numerator,denominator", or "n,t^0,...,t^T" with
// rational strings for symbolic series.
void write_series_csv(std::ostream& out, const TruncSeries<NumericQ>& f);
void write_series_csv(std::ostream& out, const TruncSeries<SymbolicT>& f);

}  // namespace clnode
