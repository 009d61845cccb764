#include "clnode/fq_matrix.hpp"

#include <algorithm>
#include <utility>

#include "clnode/errors.hpp"

namespace clnode {

FqMatrix::FqMatrix(int n) : n_(n) {
  if (n < 0 || n > kMaxDim) throw OutOfRange("matrix dimension must lie in [0, 8]");
}

FqMatrix FqMatrix::identity(int n) {
  FqMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_index(int n, int q, std::uint64_t index) {
  FqMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = static_cast<Elem>(index % static_cast<std::uint64_t>(q));
      index /= static_cast<std::uint64_t>(q);
    }
  return m;
}

FqMatrix FqMatrix::from_rows(const std::vector<std::vector<int>>& rows, int q) {
  FqMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n_; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != m.n_)
      throw OutOfRange("matrix rows must be square");
    for (int j = 0; j < m.n_; ++j) {
      const int v = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (v < 0 || v >= q) throw OutOfRange("matrix entry outside [0, q)");
      m(i, j) = static_cast<Elem>(v);
    }
  }
  return m;
}

bool FqMatrix::next(int q) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Elem& e = (*this)(i, j);
      if (++e < q) return true;
      e = 0;
    }
  return false;
}

std::uint64_t FqMatrix::index(int q) const {
  std::uint64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i)
    for (int j = n_ - 1; j >= 0; --j) idx = idx * static_cast<std::uint64_t>(q) + (*this)(i, j);
  return idx;
}

bool FqMatrix::is_zero() const {
  for (auto e : e_)
    if (e) return false;
  return true;
}

FqMatrix add(const FqMatrix& a, const FqMatrix& b, const Fq& f) {
  FqMatrix r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = f.add(a(i, j), b(i, j));
  return r;
}

FqMatrix subtract(const FqMatrix& a, const FqMatrix& b, const Fq& f) {
  FqMatrix r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = f.sub(a(i, j), b(i, j));
  return r;
}

FqMatrix scale(const FqMatrix& a, Fq::Elem c, const Fq& f) {
  FqMatrix r(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) r(i, j) = f.mul(c, a(i, j));
  return r;
}

FqMatrix multiply(const FqMatrix& a, const FqMatrix& b, const Fq& f) {
  const int n = a.n();
  FqMatrix r(n);
  if (f.is_prime()) {
    const int p = f.characteristic();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
        r(i, j) = static_cast<Fq::Elem>(s % p);
      }
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Fq::Elem s = 0;
      for (int k = 0; k < n; ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
      r(i, j) = s;
    }
  return r;
}

Fq::Elem trace(const FqMatrix& a, const Fq& f) {
  Fq::Elem s = 0;
  for (int i = 0; i < a.n(); ++i) s = f.add(s, a(i, i));
  return s;
}

namespace {

// In-place reduced row echelon form; returns pivot column of each pivot row.
std::vector<int> rref(std::vector<std::vector<Fq::Elem>>& m, int cols, const Fq& f) {
  std::vector<int> pivots;
  size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    size_t piv = row;
    while (piv < m.size() && m[piv][static_cast<size_t>(c)] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const Fq::Elem inv = f.inv(m[row][static_cast<size_t>(c)]);
    for (auto& e : m[row]) e = f.mul(e, inv);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      const Fq::Elem factor = m[r][static_cast<size_t>(c)];
      if (!factor) continue;
      for (int k = 0; k < cols; ++k)
        m[r][static_cast<size_t>(k)] = f.sub(m[r][static_cast<size_t>(k)], f.mul(factor, m[row][static_cast<size_t>(k)]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Fq::Elem>> rows_of(const FqMatrix& a, bool transposed) {
  std::vector<std::vector<Fq::Elem>> m(static_cast<size_t>(a.n()), std::vector<Fq::Elem>(static_cast<size_t>(a.n())));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = transposed ? a(j, i) : a(i, j);
  return m;
}

}  // namespace

int rank(const FqMatrix& a, const Fq& f) {
  const int n = std::min(a.n(), kMaxDim);
  std::array<std::array<Fq::Elem, kMaxDim>, kMaxDim> m{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = r;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != r)
      for (int k = c; k < n; ++k) std::swap(m[piv][k], m[r][k]);
    const Fq::Elem inv = f.inv(m[r][c]);
    for (int i = r + 1; i < n; ++i) {
      const Fq::Elem factor = f.mul(m[i][c], inv);
      if (!factor) continue;
      for (int k = c; k < n; ++k) m[i][k] = f.sub(m[i][k], f.mul(factor, m[r][k]));
    }
    ++r;
  }
  return r;
}

int nullity(const FqMatrix& a, const Fq& f) { return a.n() - rank(a, f); }

bool is_nilpotent(const FqMatrix& a, const Fq& f) {
  const int n = a.n();
  if (n == 0) return true;
  if (trace(a, f) != 0) return false;
  // A^m = 0 for some m >= n iff A is nilpotent, so repeated squaring suffices
  FqMatrix p = a;
  for (int m = 1; m < n; m *= 2) {
    if (p.is_zero()) return true;
    p = multiply(p, p, f);
  }
  return p.is_zero();
}

int rank_general(std::vector<std::vector<Fq::Elem>> rows, const Fq& f) {
  if (rows.empty()) return 0;
  return static_cast<int>(rref(rows, static_cast<int>(rows.front().size()), f).size());
}

std::vector<std::vector<Fq::Elem>> null_space(std::vector<std::vector<Fq::Elem>> rows, int cols, const Fq& f) {
  const auto pivots = rref(rows, cols, f);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<Fq::Elem>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Fq::Elem> v(static_cast<size_t>(cols), 0);
    v[static_cast<size_t>(free)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = f.neg(rows[r][static_cast<size_t>(free)]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Fq::Elem>> kernel_basis(const FqMatrix& a, const Fq& f) {
  return null_space(rows_of(a, false), a.n(), f);
}

std::vector<std::vector<Fq::Elem>> left_kernel_basis(const FqMatrix& a, const Fq& f) {
  return null_space(rows_of(a, true), a.n(), f);
}

int commutant_dimension(const FqMatrix& a, const Fq& f) {
  const int n = a.n();
  const int dim = n * n;
  // row (i,j) of the map X -> AX - XA, column (k,l) indexes X_{kl}
  std::vector<std::vector<Fq::Elem>> m(static_cast<size_t>(dim), std::vector<Fq::Elem>(static_cast<size_t>(dim), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& row = m[static_cast<size_t>(i * n + j)];
      for (int k = 0; k < n; ++k) {
        auto& ax = row[static_cast<size_t>(k * n + j)];
        ax = f.add(ax, a(i, k));
        auto& xa = row[static_cast<size_t>(i * n + k)];
        xa = f.sub(xa, a(k, j));
      }
    }
  return dim - rank_general(std::move(m), f);
}

Integer gl_order(int n, const Integer& q) {
  if (n < 0) throw OutOfRange("gl_order needs n >= 0");
  const Integer qn = ipow(q, static_cast<unsigned long>(n));
  Integer r = 1;
  for (int j = 0; j < n; ++j) r *= qn - ipow(q, static_cast<unsigned long>(j));
  return r;
}

namespace gf2 {

Packed pack(const FqMatrix& a) {
  Packed m = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (a(i, j) & 1) m |= Packed{1} << (8 * i + j);
  return m;
}

FqMatrix unpack(Packed m, int n) {
  FqMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<Fq::Elem>((m >> (8 * i + j)) & 1);
  return a;
}

Packed from_index(int n, std::uint64_t index) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  Packed m = 0;
  for (int i = 0; i < n; ++i) m |= ((index >> (i * n)) & mask) << (8 * i);
  return m;
}

Packed multiply(Packed a, Packed b, int n) {
  Packed r = 0;
  for (int i = 0; i < n; ++i) {
    unsigned row = static_cast<unsigned>((a >> (8 * i)) & 0xff);
    Packed acc = 0;
    while (row) {
      const int j = __builtin_ctz(row);
      acc ^= (b >> (8 * j)) & 0xff;
      row &= row - 1;
    }
    r |= acc << (8 * i);
  }
  return r;
}

Packed transpose(Packed a, int n) {
  Packed r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((a >> (8 * i + j)) & 1) r |= Packed{1} << (8 * j + i);
  return r;
}

int rank(Packed a, int n) {
  std::array<unsigned, kMaxDim> rows{};
  for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = static_cast<unsigned>((a >> (8 * i)) & 0xff);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    const unsigned pivot = rows[static_cast<size_t>(i)];
    if (!pivot) continue;
    ++r;
    const unsigned low = pivot & (~pivot + 1);
    for (int k = i + 1; k < n; ++k)
      if (rows[static_cast<size_t>(k)] & low) rows[static_cast<size_t>(k)] ^= pivot;
  }
  return r;
}

bool is_nilpotent(Packed a, int n) {
  if (n == 0) return true;
  int tr = 0;
  for (int i = 0; i < n; ++i) tr ^= static_cast<int>((a >> (9 * i)) & 1);
  if (tr) return false;
  for (int m = 1; m < n; m *= 2) {
    if (!a) return true;
    a = multiply(a, a, n);
  }
  return a == 0;
}

}  // namespace gf2

}  // namespace clnode
