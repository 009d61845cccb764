#include "clnode/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "clnode/errors.hpp"

namespace clnode {

namespace {

struct FieldSpec {
  int p;
  int degree;
  std::vector<int> modulus;  // monic irreducible, low degree first, length degree+1
};

FieldSpec spec_for(int q) {
  switch (q) {
    case 2: return {2, 1, {}};
    case 3: return {3, 1, {}};
    case 5: return {5, 1, {}};
    case 7: return {7, 1, {}};
    case 4: return {2, 2, {1, 1, 1}};     // x^2 + x + 1
    case 8: return {2, 3, {1, 1, 0, 1}};  // x^3 + x + 1
    case 9: return {3, 2, {1, 0, 1}};     // x^2 + 1
    default: throw UnsupportedField("unsupported field size q=" + std::to_string(q));
  }
}

std::vector<int> digits(int e, int p, int d) {
  std::vector<int> v(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) { v[static_cast<size_t>(i)] = e % p; e /= p; }
  return v;
}

int undigits(const std::vector<int>& v, int p) {
  int e = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) e = e * p + v[static_cast<size_t>(i)];
  return e;
}

// Polynomial product modulo the field modulus, used to seed the log tables.
int poly_mul(int a, int b, const FieldSpec& s) {
  const auto da = digits(a, s.p, s.degree), db = digits(b, s.p, s.degree);
  std::vector<int> r(static_cast<size_t>(2 * s.degree), 0);
  for (int i = 0; i < s.degree; ++i)
    for (int j = 0; j < s.degree; ++j)
      r[static_cast<size_t>(i + j)] = (r[static_cast<size_t>(i + j)] + da[static_cast<size_t>(i)] * db[static_cast<size_t>(j)]) % s.p;
  for (int i = 2 * s.degree - 1; i >= s.degree; --i) {
    const int c = r[static_cast<size_t>(i)];
    if (!c) continue;
    for (int j = 0; j <= s.degree; ++j) {
      auto& slot = r[static_cast<size_t>(i - s.degree + j)];
      slot = ((slot - c * s.modulus[static_cast<size_t>(j)]) % s.p + s.p) % s.p;
    }
  }
  r.resize(static_cast<size_t>(s.degree));
  return undigits(r, s.p);
}

}  // namespace

bool Fq::supported(int q) {
  return q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9;
}

const Fq& Fq::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Fq>> cache;
  if (!supported(q)) throw UnsupportedField("unsupported field size q=" + std::to_string(q));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[q];
  if (!slot) slot.reset(new Fq(q));
  return *slot;
}

Fq::Fq(int q) : q_(q) {
  const FieldSpec s = spec_for(q);
  p_ = s.p;
  degree_ = s.degree;
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p_, degree_);
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p_, degree_);
      std::vector<int> sum(static_cast<size_t>(degree_));
      for (int i = 0; i < degree_; ++i) sum[static_cast<size_t>(i)] = (da[static_cast<size_t>(i)] + db[static_cast<size_t>(i)]) % p_;
      add_[a * kStride + b] = static_cast<Elem>(undigits(sum, p_));
    }
  }
  if (degree_ == 1) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) mul_[a * kStride + b] = static_cast<Elem>((a * b) % p_);
  } else {
    // find a primitive element, then multiply through discrete logs
    for (int g = 2; g < q && antilog_.empty(); ++g) {
      std::vector<Elem> powers{1};
      int x = g;
      while (x != 1 && static_cast<int>(powers.size()) < q) {
        powers.push_back(static_cast<Elem>(x));
        x = poly_mul(x, g, s);
      }
      if (static_cast<int>(powers.size()) == q - 1) antilog_ = powers;
    }
    if (antilog_.empty()) throw UnsupportedField("no primitive element found");
    log_.assign(static_cast<size_t>(q), -1);
    for (int i = 0; i < q - 1; ++i) log_[antilog_[static_cast<size_t>(i)]] = i;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        mul_[a * kStride + b] =
            (a == 0 || b == 0) ? 0 : antilog_[static_cast<size_t>((log_[static_cast<size_t>(a)] + log_[static_cast<size_t>(b)]) % (q - 1))];
  }
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (add_[a * kStride + b] == 0) neg_[a] = static_cast<Elem>(b);
      if (mul_[a * kStride + b] == 1) inv_[a] = static_cast<Elem>(b);
    }
  verify_axioms();
}

void Fq::verify_axioms() const {
  auto fail = [this](const char* what) {
    throw UnsupportedField(std::string("field axiom violated for q=") + std::to_string(q_) + ": " + what);
  };
  for (int a = 0; a < q_; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a) fail("identity");
    if (add(a, neg(a)) != 0) fail("additive inverse");
    if (a != 0 && mul(a, inv_[a]) != 1) fail("multiplicative inverse");
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) fail("commutativity");
      for (int c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) fail("additive associativity");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplicative associativity");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("distributivity");
      }
    }
  }
}

Fq::Elem Fq::inv(Elem a) const {
  if (a == 0) throw NotInvertible("zero has no inverse in F_q");
  return inv_[a];
}

Fq::Elem Fq::from_int(long v) const {
  long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

}  // namespace clnode
