#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "clnode/trunc_series.hpp"

namespace clnode {

/// Nonincreasing sequence of positive integers, stored densely.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  // 1-based part, 0 past the end.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<size_t>(i - 1)] : 0; }
  // Number of parts equal to i.
  int multiplicity(int i) const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// Nonincreasing sequence of nonnegative integers; trailing zeros count
/// toward the length.
class PartitionWithZeros {
 public:
  PartitionWithZeros() = default;
  explicit PartitionWithZeros(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  int part(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<size_t>(i - 1)] : 0; }
  Partition positive_part() const;

  auto operator<=>(const PartitionWithZeros&) const = default;

 private:
  std::vector<int> parts_;
};

struct DurfeeProfile {
  std::vector<int> sides;
  bool operator==(const DurfeeProfile&) const = default;
};

Partition conjugate(const Partition& p);

// max{k : p_k >= k}
int durfee_side(const Partition& p);
DurfeeProfile durfee_profile(const Partition& p);

/// Bounds for enumeration. Either a size bound or a finite box
/// (max_length and max_part) is required.
struct PartitionBounds {
  std::optional<int> size;      // exact size
  std::optional<int> max_size;
  std::optional<int> max_length;
  std::optional<int> max_part;
};

/// Visits every partition within the bounds once: by increasing size, then
/// lexicographically descending.
void for_each_partition(const PartitionBounds& bounds, const std::function<void(const Partition&)>& visit);
std::vector<Partition> enumerate_partitions(const PartitionBounds& bounds);

/// Partitions with zeros of length <= max_length, parts <= max_part, size
/// <= max_size; ordered by length, then size, then lexicographically descending.
void for_each_partition_with_zeros(int max_length, int max_part, int max_size,
                                   const std::function<void(const PartitionWithZeros&)>& visit);

struct FirstDurfeeSplit {
  int k = 0;
  Partition right;  // to the right of the square, at most k parts
  Partition below;  // below the square, parts at most k
};

FirstDurfeeSplit split_first_durfee(const Partition& p);
Partition reassemble_first_durfee(int k, const Partition& right, const Partition& below);

struct TwoDurfeeSplit {
  int k = 0;
  int l = 0;
  Partition right1;         // fits k x infinity
  Partition right2;         // fits l x (k - l)
  PartitionWithZeros below; // parts <= l
};

TwoDurfeeSplit split_two_durfee(const PartitionWithZeros& p);
PartitionWithZeros reassemble_two_durfee(const TwoDurfeeSplit& pieces);

/// Result of comparing an enumerative generating function against its
/// closed form, coefficient by coefficient.
struct GenFnReport {
  std::string family;
  TruncSeries<SymbolicT> enumerated;
  TruncSeries<SymbolicT> closed_form;
  bool equal = false;
  std::optional<std::pair<int, int>> first_mismatch;  // (x-degree, t-degree)
};

// sum over l(lambda) <= k of t^|lambda| vs 1/(t;t)_k, modulo t^{T+1}.
GenFnReport check_length_bounded(int k, int T);
// sum over lambda inside (n-k) x k of t^|lambda| vs [n,k]_t.
GenFnReport check_box(int n, int k, int T);
// sum over partitions with zeros, parts <= k, of t^|lambda| x^l vs
// 1/((1-x)(1-tx)...(1-t^k x)), modulo (x^{N+1}, t^{T+1}).
GenFnReport check_zeros_bounded_parts(int k, int N, int T);
// sum over partitions with zeros of t^{|lambda| - sigma_1^2} x^l, regrouped
// through the two-square decomposition, vs the double sum over k >= l.
GenFnReport check_durfee_decomposition(int N, int T);
// The enumerated weight t^{|lambda| - sigma_1^2} x^l vs the Gaussian double sum.
GenFnReport check_first_durfee_lemma(int N, int T);
// (1/(t;t)_k) [k,l]_t vs 1/((t;t)_l (t;t)_{k-l}) for all l <= k <= k_max.
GenFnReport check_kl_simplification(int k_max, int T);

}  // namespace clnode
