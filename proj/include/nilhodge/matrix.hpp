#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "nilhodge/errors.hpp"
#include "nilhodge/scalar.hpp"

namespace nilhodge {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over the Gaussian rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }
  static Matrix column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t k = 0; k < v.size(); ++k) m(k, 0) = v[k];
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      assert(cols[c].size() == rows);
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  std::vector<Vector> columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(col(c));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  /// Conjugate transpose.
  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
    return m;
  }
  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }
  Matrix conj() const {
    Matrix m = *this;
    for (auto& s : m.data_) s = s.conj();
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_)
      if (!x.is_zero()) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
  Matrix operator-() const { return *this * Scalar(-1); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(r, k);
        if (x.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const Scalar& y = b(k, c);
          if (!y.is_zero()) m(r, c) += x * y;
        }
      }
    }
    return m;
  }
  friend Vector operator*(const Matrix& a, const Vector& v) {
    assert(a.cols_ == v.size());
    Vector out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c)
        if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// [A | B]
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ || a.cols_ == 0 || b.cols_ == 0);
    std::size_t rows = a.cols_ ? a.rows_ : b.rows_;
    Matrix m(rows, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
    }
    return m;
  }
  /// [A ; B]
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.cols_ || a.rows_ == 0 || b.rows_ == 0);
    std::size_t cols = a.rows_ ? a.cols_ : b.cols_;
    Matrix m(a.rows_ + b.rows_, cols);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(a.rows_ + r, c) = b(r, c);
    return m;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = (*this)(r, idx[c]);
    return m;
  }
  Matrix top_rows(std::size_t k) const {
    Matrix m(k, cols_);
    std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(k * cols_), m.data_.begin());
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination over Q(i). In each column the pivot is the entry
/// of smallest bit size, which keeps coefficient growth down on the sparse
/// structure-constant matrices this library produces.
inline EchelonForm row_reduce(Matrix a) {
  EchelonForm out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t best = a.rows();
    std::size_t best_size = 0;
    for (std::size_t r = row; r < a.rows(); ++r) {
      if (a(r, c).is_zero()) continue;
      std::size_t sz = a(r, c).bit_size();
      if (best == a.rows() || sz < best_size) {
        best = r;
        best_size = sz;
      }
    }
    if (best == a.rows()) continue;
    a.swap_rows(row, best);
    Scalar inv = Scalar(1) / a(row, c);
    for (std::size_t k = c; k < a.cols(); ++k)
      if (!a(row, k).is_zero()) a(row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c).is_zero()) continue;
      Scalar f = a(r, c);
      for (std::size_t k = c; k < a.cols(); ++k)
        if (!a(row, k).is_zero()) a(r, k) -= f * a(row, k);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

inline std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return row_reduce(a).rank();
}

/// Basis of the null space, one vector per free column, read off the RREF.
inline std::vector<Vector> kernel_basis(const Matrix& a) {
  std::vector<Vector> basis;
  if (a.cols() == 0) return basis;
  if (a.rows() == 0) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Vector v(a.cols());
      v[c] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  auto ef = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the column space: the pivot columns of `a`.
inline std::vector<Vector> image_basis(const Matrix& a) {
  std::vector<Vector> basis;
  if (a.empty()) return basis;
  for (auto p : row_reduce(a).pivots) basis.push_back(a.col(p));
  return basis;
}

/// Inverse of a square matrix; throws SingularOperator when det = 0.
inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw SingularOperator("inverse of a non-square matrix");
  std::size_t n = a.rows();
  auto ef = row_reduce(Matrix::hstack(a, Matrix::identity(n)));
  if (ef.rank() < n || (n > 0 && ef.pivots[n - 1] != n - 1)) throw SingularOperator("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ef.reduced(r, n + c);
  return inv;
}

inline Scalar determinant(Matrix a) {
  if (a.rows() != a.cols()) throw SingularOperator("determinant of a non-square matrix");
  Scalar det = 1;
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!a(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      a.swap_rows(piv, c);
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = Scalar(1) / a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      Scalar f = a(r, c) * inv;
      for (std::size_t k = c; k < n; ++k)
        if (!a(c, k).is_zero()) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

/// Moore-Penrose pseudo-inverse through the rank factorization A = B*C with
/// B the pivot columns of A and C the nonzero rows of its RREF:
/// A+ = C^H (C C^H)^-1 (B^H B)^-1 B^H.
inline Matrix pinv(const Matrix& a) {
  Matrix zero(a.cols(), a.rows());
  if (a.empty()) return zero;
  auto ef = row_reduce(a);
  if (ef.rank() == 0) return zero;
  Matrix b = a.select_columns(ef.pivots);
  Matrix c = ef.reduced.top_rows(ef.rank());
  Matrix bh = b.adjoint();
  Matrix ch = c.adjoint();
  return ch * inverse(c * ch) * inverse(bh * b) * bh;
}

/// Minimum-norm exact solution of A x = b, or nullopt when b is not in the
/// column space.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  assert(a.rows() == b.size());
  Vector x = pinv(a) * b;
  if (a * x != b) return std::nullopt;
  return x;
}

/// Standard Hermitian inner product <u, v> = sum u_k conj(v_k).
inline Scalar inner(const Vector& u, const Vector& v) {
  assert(u.size() == v.size());
  Scalar s;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero() && !v[k].is_zero()) s += u[k] * v[k].conj();
  return s;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Subspaces of C^dim, spanned by the columns of a matrix.

inline std::size_t span_dim(const Matrix& span) { return rank(span); }

inline std::size_t sum_dim(const Matrix& u, const Matrix& v) {
  if (u.cols() == 0) return rank(v);
  if (v.cols() == 0) return rank(u);
  return rank(Matrix::hstack(u, v));
}

inline std::size_t intersection_dim(const Matrix& u, const Matrix& v) {
  return rank(u) + rank(v) - sum_dim(u, v);
}

/// Is span(u) contained in span(v)?
inline bool contained_in(const Matrix& u, const Matrix& v) { return sum_dim(u, v) == rank(v); }

/// Column-space spanning matrix of the kernel of `a` (dim x k).
inline Matrix kernel_span(const Matrix& a) { return Matrix::from_columns(a.cols(), kernel_basis(a)); }

}  // namespace nilhodge
