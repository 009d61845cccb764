#include "clnode/presentation.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "clnode/errors.hpp"

namespace clnode {

namespace {

Polynomial constant(const Integer& c, size_t m) {
  Polynomial p;
  if (c != 0) p.terms[std::vector<int>(m, 0)] = c;
  return p;
}

void accumulate(Polynomial& into, const std::vector<int>& e, const Integer& c) {
  auto it = into.terms.find(e);
  if (it == into.terms.end()) {
    if (c != 0) into.terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) into.terms.erase(it);
}

Polynomial plus(const Polynomial& a, const Polynomial& b, int sign) {
  Polynomial r = a;
  for (const auto& [e, c] : b.terms) accumulate(r, e, sign > 0 ? c : Integer(-c));
  return r;
}

Polynomial times(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      accumulate(r, e, Integer(ca * cb));
    }
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UnsupportedPresentation("cannot parse polynomial \"" + s_ + "\": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial expr() {
    skip();
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    Polynomial acc = plus(Polynomial{}, term(), sign);
    for (;;) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return acc;
      const int s = s_[pos_++] == '-' ? -1 : 1;
      acc = plus(acc, term(), s);
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        acc = times(acc, power());
      } else if (starts_factor()) {
        acc = times(acc, power());
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      const int e = std::stoi(s_.substr(start, pos_ - start));
      Polynomial r = constant(1, vars_.size());
      for (int i = 0; i < e; ++i) r = times(r, base);
      return r;
    }
    return base;
  }

  Polynomial variable(size_t index) {
    Polynomial p;
    std::vector<int> e(vars_.size(), 0);
    e[index] = 1;
    p.terms[e] = 1;
    return p;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Integer(s_.substr(start, pos_ - start)), vars_.size());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (auto idx = lookup(word)) return variable(*idx - 1);
      // juxtaposed single-letter variables, e.g. "uv"
      Polynomial r = constant(1, vars_.size());
      for (char ch : word) {
        const auto idx = lookup(std::string(1, ch));
        if (!idx) fail("unknown variable '" + word + "'");
        r = times(r, variable(*idx - 1));
      }
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // 1-based index, 0 if absent
  std::optional<size_t> lookup(const std::string& w) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == w) return i + 1;
    return std::nullopt;
  }

  std::string s_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;
};

}  // namespace

std::string Polynomial::str(const std::vector<std::string>& vars) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first, for readability
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool wrote = false;
    if (mag != 1) { os << mag.get_str(); wrote = true; }
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (wrote) os << "*";
      os << vars[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
    if (!wrote) os << "1";
  }
  return os.str();
}

std::string Presentation::canonical() const {
  std::ostringstream os;
  os << "vars:";
  for (size_t i = 0; i < variables.size(); ++i) os << (i ? "," : "") << variables[i];
  os << ";rel:";
  for (size_t i = 0; i < relations.size(); ++i) os << (i ? "," : "") << relations[i].str(variables);
  os << ";nil:";
  for (size_t i = 0; i < nilpotent.size(); ++i) os << (i ? "," : "") << nilpotent[i].str(variables);
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t Presentation::hash() const { return fnv1a(canonical()); }

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

Presentation parse_presentation(const std::vector<std::string>& variables,
                                const std::vector<std::string>& relations,
                                const std::vector<std::string>& nilpotent) {
  Presentation p;
  for (const auto& v : variables) {
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw UnsupportedPresentation("invalid variable name '" + v + "'");
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw UnsupportedPresentation("invalid variable name '" + v + "'");
    for (const auto& w : p.variables)
      if (w == v) throw UnsupportedPresentation("duplicate variable '" + v + "'");
    p.variables.push_back(v);
  }
  for (const auto& r : relations) p.relations.push_back(parse_polynomial(r, p.variables));
  for (const auto& g : nilpotent) p.nilpotent.push_back(parse_polynomial(g, p.variables));
  return p;
}

FqMatrix evaluate(const Polynomial& f, const std::vector<FqMatrix>& values, const Fq& field) {
  if (values.empty()) throw OutOfRange("evaluate needs at least one matrix");
  const int n = values.front().n();
  FqMatrix acc(n);
  // cache of powers per variable, grown on demand
  std::vector<std::vector<FqMatrix>> powers(values.size());
  for (size_t i = 0; i < values.size(); ++i) powers[i].push_back(FqMatrix::identity(n));
  for (const auto& [e, c] : f.terms) {
    const Fq::Elem coeff = field.from_int(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(field.characteristic())));
    if (!coeff) continue;
    FqMatrix m = FqMatrix::identity(n);
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(multiply(pw.back(), values[i], field));
      m = multiply(m, pw[static_cast<size_t>(e[i])], field);
    }
    acc = add(acc, scale(m, coeff, field), field);
  }
  return acc;
}

}  // namespace clnode
