#include "clnode/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "clnode/qseries.hpp"

namespace clnode {

namespace {

bool nonincreasing(const std::vector<int>& v) {
  return std::is_sorted(v.rbegin(), v.rend());
}

GenFnReport compare(std::string family, TruncSeries<SymbolicT> lhs, TruncSeries<SymbolicT> rhs) {
  GenFnReport r{std::move(family), std::move(lhs), std::move(rhs), true, std::nullopt};
  const int N = std::min(r.enumerated.order(), r.closed_form.order());
  const int T = std::min(r.enumerated.ring().T, r.closed_form.ring().T);
  for (int n = 0; n <= N && r.equal; ++n)
    for (int j = 0; j <= T; ++j)
      if (r.enumerated[n][j] != r.closed_form[n][j]) {
        r.equal = false;
        r.first_mismatch = {n, j};
        break;
      }
  return r;
}

void add_monomial(TruncSeries<SymbolicT>& f, int x_degree, int t_degree) {
  if (x_degree <= f.order() && t_degree <= f.ring().T) f[x_degree][t_degree] += 1;
}

void generate(int remaining, int max_part, int slots, std::vector<int>& cur,
              const std::function<void(const Partition&)>& visit) {
  if (remaining == 0) {
    visit(Partition(cur));
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    if (static_cast<long>(p) * slots < remaining) break;
    cur.push_back(p);
    generate(remaining - p, p, slots - 1, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (!nonincreasing(parts_) || (!parts_.empty() && parts_.back() < 1))
    throw MalformedPieces("partition parts must be positive and nonincreasing");
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::multiplicity(int i) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

PartitionWithZeros::PartitionWithZeros(std::vector<int> parts) : parts_(std::move(parts)) {
  if (!nonincreasing(parts_) || (!parts_.empty() && parts_.back() < 0))
    throw MalformedPieces("partition-with-zeros parts must be nonnegative and nonincreasing");
}

int PartitionWithZeros::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition PartitionWithZeros::positive_part() const {
  std::vector<int> v;
  for (int p : parts_)
    if (p > 0) v.push_back(p);
  return Partition(std::move(v));
}

Partition conjugate(const Partition& p) {
  std::vector<int> c;
  for (int i = 1; i <= p.part(1); ++i) {
    int count = 0;
    for (int x : p.parts()) count += x >= i;
    c.push_back(count);
  }
  return Partition(std::move(c));
}

int durfee_side(const Partition& p) {
  int k = 0;
  while (p.part(k + 1) >= k + 1) ++k;
  return k;
}

DurfeeProfile durfee_profile(const Partition& p) {
  DurfeeProfile d;
  std::vector<int> rest = p.parts();
  while (!rest.empty()) {
    const int k = durfee_side(Partition(rest));
    if (k == 0) break;
    d.sides.push_back(k);
    rest.erase(rest.begin(), rest.begin() + k);
  }
  return d;
}

void for_each_partition(const PartitionBounds& b, const std::function<void(const Partition&)>& visit) {
  int lo = 0, hi = 0;
  if (b.size) {
    lo = hi = *b.size;
  } else if (b.max_size) {
    hi = *b.max_size;
  } else if (b.max_length && b.max_part) {
    hi = *b.max_length * *b.max_part;
  } else {
    throw OutOfRange("partition enumeration needs a size bound or a finite box");
  }
  const int max_part = b.max_part.value_or(hi);
  const int max_length = b.max_length.value_or(hi);
  std::vector<int> cur;
  for (int s = lo; s <= hi; ++s) generate(s, max_part, max_length, cur, visit);
}

std::vector<Partition> enumerate_partitions(const PartitionBounds& bounds) {
  std::vector<Partition> out;
  for_each_partition(bounds, [&](const Partition& p) { out.push_back(p); });
  return out;
}

void for_each_partition_with_zeros(int max_length, int max_part, int max_size,
                                   const std::function<void(const PartitionWithZeros&)>& visit) {
  for (int len = 0; len <= max_length; ++len) {
    PartitionBounds b;
    b.max_size = std::min(max_size, len * max_part);
    b.max_length = len;
    b.max_part = max_part;
    for_each_partition(b, [&](const Partition& p) {
      std::vector<int> v = p.parts();
      v.resize(static_cast<size_t>(len), 0);
      visit(PartitionWithZeros(std::move(v)));
    });
  }
}

FirstDurfeeSplit split_first_durfee(const Partition& p) {
  FirstDurfeeSplit s;
  s.k = durfee_side(p);
  std::vector<int> right, below;
  for (int i = 1; i <= s.k; ++i)
    if (p.part(i) > s.k) right.push_back(p.part(i) - s.k);
  for (int i = s.k + 1; i <= p.length(); ++i) below.push_back(p.part(i));
  s.right = Partition(std::move(right));
  s.below = Partition(std::move(below));
  return s;
}

Partition reassemble_first_durfee(int k, const Partition& right, const Partition& below) {
  if (k < 0 || right.length() > k || below.part(1) > k)
    throw MalformedPieces("first-square pieces do not fit a square of side " + std::to_string(k));
  std::vector<int> v;
  for (int i = 1; i <= k; ++i) v.push_back(k + right.part(i));
  for (int x : below.parts()) v.push_back(x);
  return Partition(std::move(v));
}

TwoDurfeeSplit split_two_durfee(const PartitionWithZeros& p) {
  TwoDurfeeSplit s;
  const Partition pos = p.positive_part();
  s.k = durfee_side(pos);
  std::vector<int> lower(p.parts().begin() + s.k, p.parts().end());
  s.l = durfee_side(PartitionWithZeros(lower).positive_part());
  std::vector<int> r1, r2;
  for (int i = 1; i <= s.k; ++i)
    if (p.part(i) > s.k) r1.push_back(p.part(i) - s.k);
  for (int i = 1; i <= s.l; ++i)
    if (p.part(s.k + i) > s.l) r2.push_back(p.part(s.k + i) - s.l);
  s.right1 = Partition(std::move(r1));
  s.right2 = Partition(std::move(r2));
  s.below = PartitionWithZeros(std::vector<int>(p.parts().begin() + s.k + s.l, p.parts().end()));
  return s;
}

PartitionWithZeros reassemble_two_durfee(const TwoDurfeeSplit& s) {
  if (s.l < 0 || s.k < s.l) throw MalformedPieces("two-square pieces need k >= l >= 0");
  if (s.right1.length() > s.k) throw MalformedPieces("right piece of the first square has more than k parts");
  if (s.right2.length() > s.l || s.right2.part(1) > s.k - s.l)
    throw MalformedPieces("right piece of the second square does not fit l x (k-l)");
  if (s.below.part(1) > s.l) throw MalformedPieces("piece below the second square has a part > l");
  std::vector<int> v;
  for (int i = 1; i <= s.k; ++i) v.push_back(s.k + s.right1.part(i));
  for (int i = 1; i <= s.l; ++i) v.push_back(s.l + s.right2.part(i));
  for (int x : s.below.parts()) v.push_back(x);
  return PartitionWithZeros(std::move(v));
}

GenFnReport check_length_bounded(int k, int T) {
  const SymbolicT ring(T);
  TruncSeries<SymbolicT> lhs(ring, 0);
  PartitionBounds b;
  b.max_size = T;
  b.max_length = k;
  for_each_partition(b, [&](const Partition& p) { add_monomial(lhs, 0, p.size()); });
  auto rhs = TruncSeries<SymbolicT>::constant(ring, 0, pochhammer_fin(ring.t(), ring.t(), k).inverse());
  return compare("length<=" + std::to_string(k), std::move(lhs), std::move(rhs));
}

GenFnReport check_box(int n, int k, int T) {
  const SymbolicT ring(T);
  TruncSeries<SymbolicT> lhs(ring, 0);
  PartitionBounds b;
  b.max_length = n - k;
  b.max_part = k;
  for_each_partition(b, [&](const Partition& p) { add_monomial(lhs, 0, p.size()); });
  auto rhs = TruncSeries<SymbolicT>::constant(ring, 0, q_binomial(n, k, ring.t()));
  return compare("box " + std::to_string(n - k) + "x" + std::to_string(k), std::move(lhs),
                            std::move(rhs));
}

GenFnReport check_zeros_bounded_parts(int k, int N, int T) {
  const SymbolicT ring(T);
  TruncSeries<SymbolicT> lhs(ring, N);
  for_each_partition_with_zeros(N, k, T, [&](const PartitionWithZeros& p) {
    add_monomial(lhs, p.length(), p.size());
  });
  const auto x = TruncSeries<SymbolicT>::x(ring, N);
  auto rhs = invert(pochhammer_fin(x, ring.t(), k + 1));
  return compare("zeros parts<=" + std::to_string(k), std::move(lhs), std::move(rhs));
}

namespace {

// sum over partitions with zeros of length <= N of t^{|lambda| - sigma_1^2} x^l,
// regrouped through the two-square pieces. Throws if a piece weight disagrees.
TruncSeries<SymbolicT> durfee_weight_sum(int N, int T, bool via_pieces) {
  const SymbolicT ring(T);
  TruncSeries<SymbolicT> sum(ring, N);
  for (int len = 0; len <= N; ++len) {
    for_each_partition_with_zeros(len, T + len, T + len * len, [&](const PartitionWithZeros& p) {
      if (p.length() != len) return;
      const int s1 = durfee_side(p.positive_part());
      const int weight = p.size() - s1 * s1;
      if (weight > T) return;
      if (!via_pieces) {
        add_monomial(sum, len, weight);
        return;
      }
      const auto pieces = split_two_durfee(p);
      const int w = pieces.right1.size() + pieces.right2.size() + pieces.below.size() + pieces.l * pieces.l;
      const int deg = pieces.k + pieces.l + pieces.below.length();
      if (w != weight || deg != len) throw Error("two-square bookkeeping mismatch");
      add_monomial(sum, deg, w);
    });
  }
  return sum;
}

}  // namespace

GenFnReport check_durfee_decomposition(int N, int T) {
  const SymbolicT ring(T);
  auto lhs = durfee_weight_sum(N, T, true);
  const auto t = ring.t();
  TruncSeries<SymbolicT> rhs(ring, N);
  const auto x = TruncSeries<SymbolicT>::x(ring, N);
  for (int l = 0; 2 * l <= N; ++l) {
    if (l * l > T) break;
    const auto tail = invert(pochhammer_fin(x, t, l + 1));
    for (int k = l; k + l <= N; ++k) {
      const TSeries c = ring.t_pow(l * l) * pochhammer_fin(t, t, k).inverse() * q_binomial(k, l, t);
      for (int n = 0; n + k + l <= N; ++n) rhs[n + k + l] += c * tail[n];
    }
  }
  return compare("two-square decomposition", std::move(lhs), std::move(rhs));
}

GenFnReport check_first_durfee_lemma(int N, int T) {
  const SymbolicT ring(T);
  return compare("first-square lemma", durfee_weight_sum(N, T, false), series_Zhat_node_global(N, ring));
}

GenFnReport check_kl_simplification(int k_max, int T) {
  const SymbolicT ring(T);
  const auto t = ring.t();
  int count = 0;
  for (int k = 0; k <= k_max; ++k) count += k + 1;
  TruncSeries<SymbolicT> lhs(ring, count - 1), rhs(ring, count - 1);
  int idx = 0;
  for (int k = 0; k <= k_max; ++k)
    for (int l = 0; l <= k; ++l, ++idx) {
      lhs[idx] = pochhammer_fin(t, t, k).inverse() * q_binomial(k, l, t);
      rhs[idx] = (pochhammer_fin(t, t, l) * pochhammer_fin(t, t, k - l)).inverse();
    }
  return compare("k,l simplification", std::move(lhs), std::move(rhs));
}

}  // namespace clnode
