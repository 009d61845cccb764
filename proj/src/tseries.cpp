#include "clnode/tseries.hpp"

#include <algorithm>
#include <sstream>

#include "clnode/errors.hpp"

namespace clnode {

TSeries::TSeries(int order) : order_(order), c_(static_cast<size_t>(order) + 1) {
  if (order < 0) throw OutOfRange("t-truncation order must be >= 0");
}

TSeries::TSeries(int order, std::vector<Rational> coeffs) : TSeries(order) {
  const size_t n = std::min(coeffs.size(), c_.size());
  for (size_t i = 0; i < n; ++i) c_[i] = std::move(coeffs[i]);
}

TSeries TSeries::constant(int order, const Rational& c) {
  TSeries s(order);
  s.c_[0] = c;
  return s;
}

TSeries TSeries::monomial(int order, const Rational& c, int exponent) {
  TSeries s(order);
  if (exponent < 0) throw OutOfRange("negative t exponent in a power series");
  if (exponent <= order) s.c_[static_cast<size_t>(exponent)] = c;
  return s;
}

bool TSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

std::optional<int> TSeries::valuation() const {
  for (int i = 0; i <= order_; ++i)
    if (sgn(c_[static_cast<size_t>(i)]) != 0) return i;
  return std::nullopt;
}

TSeries TSeries::truncated(int order) const {
  TSeries s(order);
  const int m = std::min(order, order_);
  for (int i = 0; i <= m; ++i) s.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)];
  return s;
}

TSeries& TSeries::operator+=(const TSeries& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (int i = 0; i <= order_; ++i) c_[static_cast<size_t>(i)] += o.c_[static_cast<size_t>(i)];
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (int i = 0; i <= order_; ++i) c_[static_cast<size_t>(i)] -= o.c_[static_cast<size_t>(i)];
  return *this;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
  const int order = std::min(a.order_, b.order_);
  TSeries r(order);
  std::vector<int> nz_b;
  for (int j = 0; j <= order; ++j)
    if (sgn(b.c_[static_cast<size_t>(j)]) != 0) nz_b.push_back(j);
  if (nz_b.empty()) return r;
  Rational tmp;
  for (int i = 0; i <= order; ++i) {
    const Rational& ai = a.c_[static_cast<size_t>(i)];
    if (sgn(ai) == 0) continue;
    for (int j : nz_b) {
      if (i + j > order) break;
      mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), b.c_[static_cast<size_t>(j)].get_mpq_t());
      r.c_[static_cast<size_t>(i + j)] += tmp;
    }
  }
  return r;
}

TSeries& TSeries::operator*=(const TSeries& o) { return *this = *this * o; }

TSeries& TSeries::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

TSeries TSeries::operator-() const {
  TSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool operator==(const TSeries& a, const TSeries& b) {
  const int order = std::min(a.order_, b.order_);
  for (int i = 0; i <= order; ++i)
    if (a.c_[static_cast<size_t>(i)] != b.c_[static_cast<size_t>(i)]) return false;
  return true;
}

TSeries TSeries::shifted(int k) const {
  TSeries r(order_);
  for (int i = 0; i + k <= order_; ++i) r.c_[static_cast<size_t>(i + k)] = c_[static_cast<size_t>(i)];
  return r;
}

TSeries TSeries::inverse() const {
  if (sgn(c_[0]) == 0) throw NotInvertible("t-series with zero constant term is not invertible");
  TSeries r(order_);
  const Rational inv0 = 1 / c_[0];
  r.c_[0] = inv0;
  Rational acc, tmp;
  for (int n = 1; n <= order_; ++n) {
    acc = 0;
    for (int k = 1; k <= n; ++k) {
      const Rational& ck = c_[static_cast<size_t>(k)];
      if (sgn(ck) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), ck.get_mpq_t(), r.c_[static_cast<size_t>(n - k)].get_mpq_t());
      acc += tmp;
    }
    r.c_[static_cast<size_t>(n)] = -acc * inv0;
  }
  return r;
}

TSeries TSeries::substitute_power(int m) const {
  if (m < 1) throw OutOfRange("substitution t -> t^m needs m >= 1");
  TSeries r(order_);
  for (int i = 0; i * m <= order_; ++i) r.c_[static_cast<size_t>(i * m)] = c_[static_cast<size_t>(i)];
  return r;
}

std::string TSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= order_; ++i) {
    const Rational& c = c_[static_cast<size_t>(i)];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) os << "0";
  os << " + O(t^" << order_ + 1 << ")";
  return os.str();
}

}  // namespace clnode
