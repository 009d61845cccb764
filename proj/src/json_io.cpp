#include "clnode/json_io.hpp"

namespace clnode {

Json rational_json(const Rational& r) {
  Json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  return j;
}

namespace {

Rational make_rational(const std::string& num, const std::string& den) {
  try {
    Rational r{Integer(num), Integer(den)};
    if (r.get_den() == 0) throw Error("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational \"" + num + "/" + den + "\"");
  }
}

}  // namespace

Rational rational_from_json(const Json& j) {
  try {
    return make_rational(j.at("num").get<std::string>(), j.at("den").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed rational JSON: ") + e.what());
  }
}

Json rational_pair(const Rational& r) { return Json::array({r.get_num().get_str(), r.get_den().get_str()}); }

Rational rational_from_pair(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error("rational pair must be [\"num\", \"den\"]");
  return make_rational(j[0].get<std::string>(), j[1].get<std::string>());
}

Json scalar_json(const Rational& r) { return rational_json(r); }

Json scalar_json(const TSeries& s) {
  Json j;
  j["T"] = s.order();
  auto& c = j["coeffs"] = Json::array();
  for (const auto& a : s.coeffs()) c.push_back(rational_json(a));
  return j;
}

Json series_json(const TruncSeries<NumericQ>& f) {
  Json j;
  j["mode"] = "numeric";
  j["q"] = f.ring().q.get_str();
  j["N"] = f.order();
  auto& c = j["coeffs"] = Json::array();
  for (const auto& a : f.coeffs()) c.push_back(rational_pair(a));
  return j;
}

Json series_json(const TruncSeries<SymbolicT>& f) {
  Json j;
  j["mode"] = "symbolic";
  j["T"] = f.ring().T;
  j["N"] = f.order();
  auto& c = j["coeffs"] = Json::array();
  for (const auto& a : f.coeffs()) {
    Json row = Json::array();
    for (const auto& r : a.coeffs()) row.push_back(rational_pair(r));
    c.push_back(row);
  }
  return j;
}

TruncSeries<NumericQ> numeric_series_from_json(const Json& j) {
  try {
    if (j.at("mode") != "numeric") throw ModeMismatch("expected a numeric series document");
    const NumericQ ring{Integer(j.at("q").get<std::string>())};
    const int N = j.at("N").get<int>();
    const auto& c = j.at("coeffs");
    if (static_cast<int>(c.size()) != N + 1) throw Error("series document has wrong coefficient count");
    TruncSeries<NumericQ> f(ring, N);
    for (int n = 0; n <= N; ++n) f[n] = rational_from_pair(c[static_cast<size_t>(n)]);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed series JSON: ") + e.what());
  }
}

TruncSeries<SymbolicT> symbolic_series_from_json(const Json& j) {
  try {
    if (j.at("mode") != "symbolic") throw ModeMismatch("expected a symbolic series document");
    const SymbolicT ring{j.at("T").get<int>()};
    const int N = j.at("N").get<int>();
    const auto& c = j.at("coeffs");
    if (static_cast<int>(c.size()) != N + 1) throw Error("series document has wrong coefficient count");
    TruncSeries<SymbolicT> f(ring, N);
    for (int n = 0; n <= N; ++n) {
      const auto& row = c[static_cast<size_t>(n)];
      if (static_cast<int>(row.size()) != ring.T + 1) throw Error("t-series has wrong length");
      for (int i = 0; i <= ring.T; ++i) f[n][i] = rational_from_pair(row[static_cast<size_t>(i)]);
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed series JSON: ") + e.what());
  }
}

void write_series_csv(std::ostream& out, const TruncSeries<NumericQ>& f) {
  out << "n,numerator,denominator\n";
  for (int n = 0; n <= f.order(); ++n) out << n << "," << f[n].get_num().get_str() << "," << f[n].get_den().get_str() << "\n";
}

void write_series_csv(std::ostream& out, const TruncSeries<SymbolicT>& f) {
  out << "n";
  for (int i = 0; i <= f.ring().T; ++i) out << ",t^" << i;
  out << "\n";
  for (int n = 0; n <= f.order(); ++n) {
    out << n;
    for (const auto& r : f[n].coeffs()) out << "," << r.get_str();
    out << "\n";
  }
}

}  // namespace clnode
