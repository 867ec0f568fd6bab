#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "maforms/scalar.hpp"

namespace maforms {

/// Dense matrix over Scalar with exact elimination-based linear algebra.
/// In exact mode every routine is rational arithmetic with no rounding; in
/// inexact mode the same code runs with partial pivoting on |entry|.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("Matrix: ragged rows");
      for (auto& x : r) a_.push_back(x);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix conjugate() const {
    Matrix c(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) c.a_[i] = a_[i].conj();
    return c;
  }
  Matrix conj_transpose() const { return conjugate().transpose(); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (int i = 0; i < a.rows_ * a.cols_; ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (int i = 0; i < a.rows_ * a.cols_; ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& m) {
    Matrix c = m;
    for (auto& x : c.a_) x *= s;
    return c;
  }
  Matrix operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix: apply shape");
    std::vector<Scalar> y(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  double max_abs() const {
    double m = 0;
    for (auto& x : a_) m = std::max(m, x.abs());
    return m;
  }

  int rank() const {
    Matrix m = *this;
    return m.row_reduce();
  }

  Scalar det() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix: det of non-square");
    Matrix m = *this;
    Scalar d(1);
    int sign = 1;
    for (int col = 0, row = 0; col < cols_ && row < rows_; ++col, ++row) {
      int p = m.pick_pivot(row, col);
      if (p < 0) return Scalar(0);
      if (p != row) {
        m.swap_rows(p, row);
        sign = -sign;
      }
      d *= m(row, col);
      for (int r = row + 1; r < rows_; ++r) {
        if (m(r, col).is_zero()) continue;
        Scalar f = m(r, col) / m(row, col);
        for (int c = col; c < cols_; ++c) m(r, c) -= f * m(row, c);
      }
    }
    return sign < 0 ? -d : d;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square");
    Matrix aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = Scalar(1);
    }
    int r = aug.row_reduce(cols_);
    if (r < rows_) return std::nullopt;
    Matrix inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  /// Basis of the right kernel, one column per basis vector.
  Matrix kernel() const {
    Matrix m = *this;
    m.row_reduce();
    std::vector<int> pivot_col(rows_, -1);
    std::vector<bool> is_pivot(cols_, false);
    for (int i = 0, c = 0; i < rows_; ++i) {
      while (c < cols_ && m(i, c).is_zero()) ++c;
      if (c == cols_) break;
      pivot_col[i] = c;
      is_pivot[c] = true;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(cols_, static_cast<int>(free_cols.size()));
    for (int fi = 0; fi < static_cast<int>(free_cols.size()); ++fi) {
      int fc = free_cols[fi];
      k(fc, fi) = Scalar(1);
      for (int i = 0; i < rows_; ++i) {
        if (pivot_col[i] < 0) break;
        k(pivot_col[i], fi) = -m(i, fc);
      }
    }
    return k;
  }

  /// Characteristic polynomial via Faddeev-LeVerrier; returns coefficients
  /// c[0..n] with p(x) = sum c[k] x^k and c[n] = 1.
  std::vector<Scalar> charpoly() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix: charpoly of non-square");
    int n = rows_;
    std::vector<Scalar> c(n + 1);
    c[n] = Scalar(1);
    Matrix m = *this;
    for (int k = 1; k <= n; ++k) {
      Scalar tr;
      for (int i = 0; i < n; ++i) tr += m(i, i);
      c[n - k] = -(tr / Scalar(k));
      if (k < n) {
        Matrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c[n - k];
        m = *this * shifted;
      }
    }
    return c;
  }

  /// In-place reduction to reduced row echelon form; returns the rank.
  /// Only the first `lead_cols` columns are eliminated (default: all), the
  /// rest ride along — which is how augmented systems are processed.
  int row_reduce(int lead_cols = -1) {
    if (lead_cols < 0) lead_cols = cols_;
    int row = 0;
    for (int col = 0; col < lead_cols && row < rows_; ++col) {
      int p = pick_pivot(row, col);
      if (p < 0) continue;
      swap_rows(p, row);
      Scalar inv = Scalar(1) / (*this)(row, col);
      for (int c = col; c < cols_; ++c) (*this)(row, c) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || (*this)(r, col).is_zero()) continue;
        Scalar f = (*this)(r, col);
        for (int c = col; c < cols_; ++c) (*this)(r, c) -= f * (*this)(row, c);
      }
      ++row;
    }
    return row;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  int pick_pivot(int from_row, int col) const {
    int best = -1;
    double best_abs = 0;
    for (int r = from_row; r < rows_; ++r) {
      const Scalar& x = (*this)(r, col);
      if (x.is_zero()) continue;
      if (x.exact()) return r;  // first nonzero is fine in exact arithmetic
      double a = x.abs();
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    return best;
  }

  int rows_, cols_;
  std::vector<Scalar> a_;
};

/// Factorized linear system A x = b for repeated right-hand sides.
/// Row-reduces [A | I] once; each solve is a matrix-vector product plus a
/// consistency check on the zero rows.
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix& a) : n_(a.cols()), r_(a), t_(Matrix::identity(a.rows())) {
    Matrix aug(a.rows(), a.cols() + a.rows());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
      aug(i, a.cols() + i) = Scalar(1);
    }
    rank_ = aug.row_reduce(a.cols());
    r_ = Matrix(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) r_(i, j) = aug(i, j);
      for (int j = 0; j < a.rows(); ++j) t_(i, j) = aug(i, a.cols() + j);
    }
    pivot_col_.assign(rank_, -1);
    for (int i = 0, c = 0; i < rank_; ++i) {
      while (c < n_ && r_(i, c).is_zero()) ++c;
      pivot_col_[i] = c;
    }
  }

  int rank() const { return rank_; }

  /// Particular solution with all free variables zero, or nullopt if
  /// inconsistent. Consistency in inexact mode uses the given tolerance.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b, double tol = 0.0) const {
    std::vector<Scalar> y = t_.apply(b);
    for (int i = rank_; i < static_cast<int>(y.size()); ++i) {
      if (y[i].exact() ? !y[i].is_zero() : y[i].abs() > tol) return std::nullopt;
    }
    // RREF with free variables pinned to zero: pivots read off directly.
    std::vector<Scalar> x(n_);
    for (int i = 0; i < rank_; ++i) x[pivot_col_[i]] = y[i];
    return x;
  }

 private:
  int n_;
  int rank_ = 0;
  Matrix r_, t_;
  std::vector<int> pivot_col_;
};

}  // namespace maforms
