#pragma once

// Test-only oracles. Nothing here calls into the series kernel; values are
// computed with plain integer arrays and brute-force enumeration.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Dense bivariate polynomial in (x, t) with integer coefficients, truncated
// at x^{N+1}, t^{T+1}. Indexed [x-degree][t-degree].
struct BiPoly {
  int N, T;
  std::vector<std::vector<mpz_class>> c;
  BiPoly(int N_, int T_) : N(N_), T(T_), c(N_ + 1, std::vector<mpz_class>(T_ + 1)) {}
  static BiPoly one(int N, int T) {
    BiPoly p(N, T);
    p.c[0][0] = 1;
    return p;
  }
  // *this *= (1 + coeff * x^dx t^dt)
  void mul_binomial(long coeff, int dx, int dt) {
    for (int i = N; i >= dx; --i)
      for (int j = T; j >= dt; --j) c[i][j] += coeff * c[i - dx][j - dt];
  }
  // *this *= 1/(1 - x^dx t^dt), via the geometric series.
  void div_binomial(int dx, int dt) {
    if (dx == 0 && dt == 0) throw 0;
    for (int i = dx; i <= N; ++i)
      for (int j = dt; j <= T; ++j) c[i][j] += c[i - dx][j - dt];
  }
};

// Rank of a matrix over F_p, p prime, by schoolbook elimination.
inline int rank_mod_p(std::vector<std::vector<int>> m, int p) {
  int r = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(m.size()); ++i)
      if (m[i][c] % p) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    int inv = 1;
    while ((m[r][c] * inv) % p != 1) ++inv;
    for (auto& v : m[r]) v = (v * inv) % p;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (i != r && m[i][c]) {
        const int f = m[i][c];
        for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

using IntMat = std::vector<std::vector<int>>;

inline IntMat matmul_mod_p(const IntMat& a, const IntMat& b, int p) {
  const size_t n = a.size();
  IntMat c(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int s = 0;
      for (size_t k = 0; k < n; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s % p;
    }
  return c;
}

inline bool is_zero(const IntMat& a) {
  for (const auto& row : a)
    for (int v : row)
      if (v) return false;
  return true;
}

// Matrix number `code` in row-major base-p order, entry (0,0) least significant.
inline IntMat matrix_from_code(int n, int p, long code) {
  IntMat m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) { m[i][j] = static_cast<int>(code % p); code /= p; }
  return m;
}

inline bool is_nilpotent_mod_p(const IntMat& a, int p) {
  IntMat pw = a;
  for (size_t i = 1; i < a.size(); ++i) pw = matmul_mod_p(pw, a, p);
  return a.empty() || is_zero(pw);
}

// Number of k-dimensional subspaces of F_p^n, p prime, by enumerating
// ordered k-tuples of independent vectors and dividing by |GL_k(F_p)|.
inline long count_subspaces(int n, int k, int p) {
  auto rank_mod = [p](const std::vector<std::vector<int>>& m) { return rank_mod_p(m, p); };
  long vectors = 1;
  for (int i = 0; i < n; ++i) vectors *= p;
  long total = 1;
  for (int i = 0; i < k; ++i) total *= vectors;
  long tuples = 0;
  for (long code = 0; code < total; ++code) {
    std::vector<std::vector<int>> m(k, std::vector<int>(n));
    long c = code;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) { m[i][j] = static_cast<int>(c % p); c /= p; }
    if (rank_mod(m) == k) ++tuples;
  }
  long gl = 1;
  long pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  long pi = 1;
  for (int i = 0; i < k; ++i) { gl *= pk - pi; pi *= p; }
  return tuples / gl;
}

inline mpq_class random_rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  int a = num(rng);
  while (nonzero && a == 0) a = num(rng);
  mpq_class r(a, den(rng));
  r.canonicalize();
  return r;
}

}  // namespace oracle
