#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "invgen/common.hpp"

namespace invgen {

// Dense matrix over the prime field F_p, entries reduced to {0..p-1}.
// Vectors are rows; matrices act on the right, matching the right action
// used for permutations.
struct FpMatrix {
  int p = 0;
  int rows = 0;
  int cols = 0;
  std::vector<int> a;  // row-major

  FpMatrix() = default;
  FpMatrix(int p_, int rows_, int cols_) : p(p_), rows(rows_), cols(cols_), a(static_cast<std::size_t>(rows_) * cols_, 0) {
    if (!is_prime(p_)) throw InputError("FpMatrix: p must be prime");
  }

  static FpMatrix identity(int p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  int at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const FpMatrix& o) const { return p == o.p && rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const FpMatrix& o) const { return a < o.a; }

  FpMatrix operator*(const FpMatrix& o) const {
    if (cols != o.rows || p != o.p) throw InputError("FpMatrix: shape/field mismatch in product");
    FpMatrix r(p, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        int v = at(i, k);
        if (!v) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = (r.at(i, j) + v * o.at(k, j)) % p;
      }
    return r;
  }

  FpMatrix operator+(const FpMatrix& o) const {
    FpMatrix r(p, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = (a[i] + o.a[i]) % p;
    return r;
  }

  FpMatrix operator-(const FpMatrix& o) const {
    FpMatrix r(p, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = ((a[i] - o.a[i]) % p + p) % p;
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
};

inline std::vector<int> apply_row(const std::vector<int>& v, const FpMatrix& m) {
  std::vector<int> out(static_cast<std::size_t>(m.cols), 0);
  for (int i = 0; i < m.rows; ++i) {
    if (!v[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < m.cols; ++j)
      out[static_cast<std::size_t>(j)] =
          (out[static_cast<std::size_t>(j)] + v[static_cast<std::size_t>(i)] * m.at(i, j)) % m.p;
  }
  return out;
}

// Row echelon basis of the span of the given row vectors.
class RowSpace {
 public:
  RowSpace(int p, int width) : p_(p), width_(width) {}

  int p() const { return p_; }
  int width() const { return width_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<int>>& basis() const { return rows_; }

  // reduce v against the basis; returns the residue
  std::vector<int> reduce(std::vector<int> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int c = v[static_cast<std::size_t>(pivots_[i])];
      if (c) {
        int f = (p_ - c) % p_;
        for (int j = 0; j < width_; ++j)
          v[static_cast<std::size_t>(j)] =
              (v[static_cast<std::size_t>(j)] + f * rows_[i][static_cast<std::size_t>(j)]) % p_;
      }
    }
    return v;
  }

  bool contains(const std::vector<int>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
  }

  // returns true if v enlarged the space
  bool insert(std::vector<int> v) {
    v = reduce(std::move(v));
    int piv = -1;
    for (int j = 0; j < width_; ++j)
      if (v[static_cast<std::size_t>(j)]) { piv = j; break; }
    if (piv < 0) return false;
    int inv = inverse_mod(v[static_cast<std::size_t>(piv)], p_);
    for (int j = 0; j < width_; ++j)
      v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] * inv % p_;
    // keep earlier rows reduced against the new pivot
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int c = rows_[i][static_cast<std::size_t>(piv)];
      if (c) {
        int f = (p_ - c) % p_;
        for (int j = 0; j < width_; ++j)
          rows_[i][static_cast<std::size_t>(j)] =
              (rows_[i][static_cast<std::size_t>(j)] + f * v[static_cast<std::size_t>(j)]) % p_;
      }
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), piv);
    return true;
  }

  static int inverse_mod(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    int r = 1;
    for (int e = p - 2; e > 0; e >>= 1) {
      // p is small and prime; Fermat is plenty
      if (e & 1) r = r * a % p;
      a = a * a % p;
    }
    return r;
  }

  // all vectors of the space, in lexicographic coefficient order
  std::vector<std::vector<int>> enumerate() const {
    std::vector<std::vector<int>> out;
    std::vector<int> coeff(rows_.size(), 0);
    while (true) {
      std::vector<int> v(static_cast<std::size_t>(width_), 0);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!coeff[i]) continue;
        for (int j = 0; j < width_; ++j)
          v[static_cast<std::size_t>(j)] =
              (v[static_cast<std::size_t>(j)] + coeff[i] * rows_[i][static_cast<std::size_t>(j)]) % p_;
      }
      out.push_back(std::move(v));
      std::size_t k = rows_.size();
      while (k > 0 && coeff[k - 1] == p_ - 1) coeff[--k] = 0;
      if (k == 0) break;
      ++coeff[k - 1];
    }
    return out;
  }

  bool operator==(const RowSpace& o) const { return rows_ == o.rows_; }

 private:
  int p_;
  int width_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> pivots_;
};

// column space of m, as a space of row vectors (images v*m over all v)
inline RowSpace row_image(const FpMatrix& m) {
  RowSpace s(m.p, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    std::vector<int> row(m.a.begin() + static_cast<long>(i) * m.cols,
                         m.a.begin() + static_cast<long>(i + 1) * m.cols);
    s.insert(std::move(row));
  }
  return s;
}

// null space {v : v*m = 0}
inline RowSpace row_kernel(const FpMatrix& m) {
  // gaussian elimination on the transpose system
  int n = m.rows;
  std::vector<std::vector<int>> aug(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    aug[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols + n), 0);
    for (int j = 0; j < m.cols; ++j) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(m.cols + i)] = 1;
  }
  int rank = 0;
  for (int col = 0; col < m.cols && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(aug[static_cast<std::size_t>(piv)], aug[static_cast<std::size_t>(rank)]);
    int inv = RowSpace::inverse_mod(aug[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)], m.p);
    for (auto& x : aug[static_cast<std::size_t>(rank)]) x = x * inv % m.p;
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      int c = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (!c) continue;
      int f = (m.p - c) % m.p;
      for (std::size_t j = 0; j < aug[static_cast<std::size_t>(r)].size(); ++j)
        aug[static_cast<std::size_t>(r)][j] =
            (aug[static_cast<std::size_t>(r)][j] + f * aug[static_cast<std::size_t>(rank)][j]) % m.p;
    }
    ++rank;
  }
  RowSpace s(m.p, n);
  for (int r = rank; r < n; ++r) {
    std::vector<int> v(aug[static_cast<std::size_t>(r)].begin() + m.cols,
                       aug[static_cast<std::size_t>(r)].end());
    s.insert(std::move(v));
  }
  return s;
}

inline FpMatrix matrix_inverse(const FpMatrix& m) {
  if (m.rows != m.cols) throw InputError("matrix_inverse: not square");
  int n = m.rows;
  std::vector<std::vector<int>> aug(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    aug[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(2 * n), 0);
    for (int j = 0; j < n; ++j) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) { piv = r; break; }
    if (piv < 0) throw InputError("matrix_inverse: singular matrix");
    std::swap(aug[static_cast<std::size_t>(piv)], aug[static_cast<std::size_t>(col)]);
    int inv = RowSpace::inverse_mod(aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)], m.p);
    for (auto& x : aug[static_cast<std::size_t>(col)]) x = x * inv % m.p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      int c = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (!c) continue;
      int f = (m.p - c) % m.p;
      for (std::size_t j = 0; j < aug[static_cast<std::size_t>(r)].size(); ++j)
        aug[static_cast<std::size_t>(r)][j] =
            (aug[static_cast<std::size_t>(r)][j] + f * aug[static_cast<std::size_t>(col)][j]) % m.p;
    }
  }
  FpMatrix out(m.p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  return out;
}

inline bool matrix_invertible(const FpMatrix& m) {
  if (m.rows != m.cols) return false;
  return row_image(m).dim() == m.rows;
}

// Closure of a matrix generating set; the generated group is finite, the cap
// guards runaway input.
inline std::vector<FpMatrix> matrix_group_elements(const std::vector<FpMatrix>& gens, int p, int n, long cap) {
  std::vector<FpMatrix> elems{FpMatrix::identity(p, n)};
  std::map<std::vector<int>, int> seen;
  seen[elems[0].a] = 0;
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    for (const FpMatrix& g : gens) {
      FpMatrix m = elems[qi] * g;
      if (seen.emplace(m.a, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(m));
        if (static_cast<long>(elems.size()) > cap)
          throw BudgetError("matrix group closure cap exceeded");
      }
    }
  }
  return elems;
}

// smallest subspace containing the seed vectors and closed under all gens
inline RowSpace spin(const std::vector<std::vector<int>>& seeds, const std::vector<FpMatrix>& gens,
                     int p, int n) {
  RowSpace s(p, n);
  std::vector<std::vector<int>> work;
  for (const auto& v : seeds)
    if (s.insert(v)) work.push_back(v);
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (const FpMatrix& g : gens) {
      auto img = apply_row(work[i], g);
      if (s.insert(img)) work.push_back(std::move(img));
    }
  }
  return s;
}

// no proper nonzero invariant subspace: every nonzero vector spins to the whole
inline bool is_irreducible(const std::vector<FpMatrix>& gens, int p, int n) {
  if (n == 0) return false;
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long code = 1; code < total; ++code) {
    long c = code;
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
      c /= p;
    }
    if (spin({v}, gens, p, n).dim() != n) return false;
  }
  return true;
}

}  // namespace invgen
