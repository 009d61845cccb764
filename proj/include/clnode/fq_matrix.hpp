#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "clnode/fq.hpp"
#include "clnode/rational.hpp"

namespace clnode {

inline constexpr int kMaxDim = 8;

/// Square matrix over F_q with n <= kMaxDim, stored in a fixed 8x8 block.
/// Enumeration order is a row-major odometer: entry (i, j) is digit i*n + j
/// of the index in base q, least significant first.
class FqMatrix {
 public:
  using Elem = Fq::Elem;

  FqMatrix() = default;
  explicit FqMatrix(int n);

  static FqMatrix zero(int n) { return FqMatrix(n); }
  static FqMatrix identity(int n);
  static FqMatrix from_index(int n, int q, std::uint64_t index);
  static FqMatrix from_rows(const std::vector<std::vector<int>>& rows, int q);

  int n() const { return n_; }
  Elem operator()(int i, int j) const { return e_[i * kMaxDim + j]; }
  Elem& operator()(int i, int j) { return e_[i * kMaxDim + j]; }

  // Advance the odometer; returns false after wrapping back to zero.
  bool next(int q);
  std::uint64_t index(int q) const;
  bool is_zero() const;

  bool operator==(const FqMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

 private:
  int n_ = 0;
  std::array<Elem, kMaxDim * kMaxDim> e_{};
};

FqMatrix add(const FqMatrix& a, const FqMatrix& b, const Fq& f);
FqMatrix subtract(const FqMatrix& a, const FqMatrix& b, const Fq& f);
FqMatrix scale(const FqMatrix& a, Fq::Elem c, const Fq& f);
FqMatrix multiply(const FqMatrix& a, const FqMatrix& b, const Fq& f);
Fq::Elem trace(const FqMatrix& a, const Fq& f);

int rank(const FqMatrix& a, const Fq& f);
int nullity(const FqMatrix& a, const Fq& f);
bool is_nilpotent(const FqMatrix& a, const Fq& f);

// Column vectors v with A v = 0, and row vectors y with y A = 0.
std::vector<std::vector<Fq::Elem>> kernel_basis(const FqMatrix& a, const Fq& f);
std::vector<std::vector<Fq::Elem>> left_kernel_basis(const FqMatrix& a, const Fq& f);

// Rank of an arbitrary rows x cols matrix given row by row.
int rank_general(std::vector<std::vector<Fq::Elem>> rows, const Fq& f);
// Null space of an arbitrary matrix: vectors v with M v = 0.
std::vector<std::vector<Fq::Elem>> null_space(std::vector<std::vector<Fq::Elem>> rows, int cols, const Fq& f);

// Dimension of {X : AX = XA}.
int commutant_dimension(const FqMatrix& a, const Fq& f);

Integer gl_order(int n, const Integer& q);

/// Packed F_2 matrices: row i occupies bits 8i..8i+7, column j is bit j of
/// that byte. Results must agree with the generic routines above; the
/// equivalence is exercised in the tests.
namespace gf2 {

using Packed = std::uint64_t;

Packed pack(const FqMatrix& a);
FqMatrix unpack(Packed m, int n);
// Packed matrix whose odometer index (over n*n bits) is `index`.
Packed from_index(int n, std::uint64_t index);
Packed multiply(Packed a, Packed b, int n);
Packed transpose(Packed a, int n);
int rank(Packed a, int n);
bool is_nilpotent(Packed a, int n);

}  // namespace gf2

}  // namespace clnode
