#pragma once

// Dense matrices over Q: elimination, kernels, exact solving, Hessenberg
// characteristic polynomials and integer Hermite normal form.

#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "orbitforge/poly.hpp"

namespace orbitforge {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      require(row.size() == c_, Errc::DimensionMismatch, "ragged matrix literal");
      for (const auto& v : row) a_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix diagonal(const std::vector<Rat>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix column_vector(const std::vector<Rat>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<Rat>>& cols) {
    require(!cols.empty(), Errc::DimensionMismatch, "no columns");
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      require(cols[j].size() == m.r_, Errc::DimensionMismatch, "ragged columns");
      for (std::size_t i = 0; i < m.r_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<Rat> column(std::size_t j) const {
    std::vector<Rat> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const std::vector<Rat>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }
  std::vector<Rat> row(std::size_t i) const {
    return std::vector<Rat>(a_.begin() + static_cast<long>(i * c_),
                            a_.begin() + static_cast<long>((i + 1) * c_));
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Rat trace() const {
    require(is_square(), Errc::NotSquare, "trace of non-square matrix");
    Rat t = 0;
    for (std::size_t i = 0; i < r_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_symmetric() const { return is_square() && *this == transpose(); }

  bool is_integral() const {
    for (const auto& v : a_)
      if (v.get_den() != 1) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  /// Columns [from, to).
  Matrix columns(std::size_t from, std::size_t to) const {
    Matrix m(r_, to - from);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, Errc::DimensionMismatch, "matrix +");
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += b.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, Errc::DimensionMismatch, "matrix -");
    Matrix m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix m = a;
    for (auto& v : m.a_) v = -v;
    return m;
  }
  friend Matrix operator*(const Rat& s, const Matrix& a) {
    Matrix m = a;
    for (auto& v : m.a_) v *= s;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.c_ == b.r_, Errc::DimensionMismatch, "matrix *");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const Rat& v = a(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += v * b(k, j);
      }
    return m;
  }
  friend std::vector<Rat> operator*(const Matrix& a, const std::vector<Rat>& x) {
    require(a.c_ == x.size(), Errc::DimensionMismatch, "matrix-vector *");
    std::vector<Rat> y(a.r_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? ", " : "") << to_string(m(i, j));
    os << "]";
  }
  return os << "]";
}

/// Bilinear pairing x^T G y.
inline Rat pairing(const Matrix& gram, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  std::vector<Rat> gy = gram * y;
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
  return s;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Rat inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of the right kernel, as columns (cols x k). Deterministic.
inline Matrix kernel(const Matrix& a) {
  Matrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix(a.cols(), 0);
  return Matrix::from_columns(basis);
}

inline Rat det(const Matrix& a) {
  require(a.is_square(), Errc::NotSquare, "det of non-square matrix");
  Matrix m = a;
  const std::size_t n = m.rows();
  Rat d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    Rat inv = 1 / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rat f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

inline Matrix inverse(const Matrix& a) {
  require(a.is_square(), Errc::NotSquare, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  require(piv.size() == n && piv.back() == n - 1, Errc::Singular, "matrix is singular");
  return aug.columns(n, 2 * n);
}

struct LinearSolution {
  Matrix particular;  // cols(A) x cols(B)
  Matrix kernel;      // basis of ker A as columns
};

/// Solve A X = B exactly; Inconsistent if no solution.
inline LinearSolution linear_solve(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), Errc::DimensionMismatch, "solve: row mismatch");
  const std::size_t n = a.cols(), k = b.cols();
  Matrix aug(a.rows(), n + k);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  auto pivots = rref(aug);
  for (auto p : pivots)
    require(p < n, Errc::Inconsistent, "linear system has no solution");
  Matrix x(n, k);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) x(pivots[r], j) = aug(r, n + j);
  return {x, kernel(a)};
}

inline std::vector<Rat> linear_solve(const Matrix& a, const std::vector<Rat>& b) {
  return linear_solve(a, Matrix::column_vector(b)).particular.column(0);
}

/// Characteristic polynomial det(xI - M) by Hessenberg reduction.
inline Poly charpoly(const Matrix& m) {
  require(m.is_square(), Errc::NotSquare, "charpoly of non-square matrix");
  const std::size_t n = m.rows();
  Matrix h = m;
  for (std::size_t k = 1; k + 1 < n + 1 && k < n; ++k) {
    std::size_t i = k;
    while (i < n && h(i, k - 1) == 0) ++i;
    if (i == n) continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(j, k - 1) == 0) continue;
      Rat u = h(j, k - 1) / h(k, k - 1);
      for (std::size_t c = 0; c < n; ++c) h(j, c) -= u * h(k, c);
      for (std::size_t r = 0; r < n; ++r) h(r, k) += u * h(r, j);
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod_{j} h_{j,j-1} p_{m-i-1}
  std::vector<Poly> p(n + 1);
  p[0] = Poly{1};
  for (std::size_t mm = 1; mm <= n; ++mm) {
    const std::size_t m0 = mm - 1;  // 0-based index of h_{m,m}
    Poly acc = Poly{-h(m0, m0), 1} * p[mm - 1];
    Rat t = 1;
    for (std::size_t i = 1; i < mm; ++i) {
      t *= h(m0 - i + 1, m0 - i);
      Rat coef = h(m0 - i, m0) * t;
      if (coef != 0) acc = acc - coef * p[mm - i - 1];
    }
    p[mm] = std::move(acc);
  }
  return p[n];
}

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// an integer matrix: a lower echelon basis with positive pivots and entries
/// left of each pivot reduced into [0, pivot). Columns = rank.
inline Matrix hnf(const Matrix& a) {
  require(a.is_integral(), Errc::NonIntegral, "hnf needs an integer matrix");
  const std::size_t m = a.rows(), k = a.cols();
  std::vector<std::vector<Int>> col(k, std::vector<Int>(m));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) col[j][i] = a(i, j).get_num();
  std::size_t piv = 0;
  for (std::size_t i = 0; i < m && piv < k; ++i) {
    for (std::size_t j = piv + 1; j < k; ++j) {
      if (col[j][i] == 0) continue;
      if (col[piv][i] == 0) {
        std::swap(col[piv], col[j]);
        continue;
      }
      Xgcd e = xgcd(col[piv][i], col[j][i]);
      Int u = col[piv][i] / e.g, v = col[j][i] / e.g;
      for (std::size_t r = 0; r < m; ++r) {
        Int x = col[piv][r], y = col[j][r];
        col[piv][r] = e.s * x + e.t * y;
        col[j][r] = u * y - v * x;
      }
    }
    if (col[piv][i] == 0) continue;
    if (col[piv][i] < 0)
      for (auto& v : col[piv]) v = -v;
    for (std::size_t j = 0; j < piv; ++j) {
      Int q = floor_div(col[j][i], col[piv][i]);
      if (q == 0) continue;
      for (std::size_t r = 0; r < m; ++r) col[j][r] -= q * col[piv][r];
    }
    ++piv;
  }
  Matrix h(m, piv);
  for (std::size_t j = 0; j < piv; ++j)
    for (std::size_t i = 0; i < m; ++i) h(i, j) = col[j][i];
  return h;
}

/// Basis (columns) of the integer lattice {x in Z^n : row . x = 0}, in HNF.
inline Matrix integer_kernel(const std::vector<Int>& row) {
  const std::size_t n = row.size();
  Matrix aug(n + 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    aug(0, j) = row[j];
    aug(j + 1, j) = 1;
  }
  Matrix h = hnf(aug);
  // after processing row 0, only the first column has a nonzero entry there
  std::size_t first = (h(0, 0) != 0) ? 1 : 0;
  Matrix k(n, h.cols() - first);
  for (std::size_t j = first; j < h.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - first) = h(i + 1, j);
  return hnf(k);
}

}  // namespace orbitforge
