#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace clnode {

/// Finite field F_q for q in {2,3,4,5,7,8,9}. Elements are encoded as
/// integers in [0, q): residues for prime fields, base-p digit vectors of
/// polynomials modulo a fixed irreducible for q = 4, 8, 9. Arithmetic is
/// table driven; tables for 4, 8, 9 come from discrete log/antilog over a
/// primitive element. Field axioms are checked exhaustively on construction.
class Fq {
 public:
  using Elem = std::uint8_t;
  static constexpr int kStride = 16;

  // Shared instance; throws UnsupportedField for other q.
  static const Fq& get(int q);
  static bool supported(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  bool is_prime() const { return degree_ == 1; }

  Elem add(Elem a, Elem b) const { return add_[a * kStride + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * kStride + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * kStride + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  // Image of an integer in the prime subfield.
  Elem from_int(long v) const;

  const Elem* add_table() const { return add_.data(); }
  const Elem* mul_table() const { return mul_.data(); }

 private:
  explicit Fq(int q);
  void verify_axioms() const;

  int q_, p_, degree_;
  std::array<Elem, kStride * kStride> add_{};
  std::array<Elem, kStride * kStride> mul_{};
  std::array<Elem, kStride> neg_{};
  std::array<Elem, kStride> inv_{};
  std::vector<Elem> antilog_;
  std::vector<int> log_;
};

}  // namespace clnode
