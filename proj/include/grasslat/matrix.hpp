#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "grasslat/exact.hpp"

namespace grasslat {

/// Dense row-major matrix over an exact scalar type. Zero-sized dimensions
/// are allowed so that kernels of full-rank maps can be represented.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error("matrix entry count does not match its shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose columns are the given vectors, all of length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// col[dst] += factor * col[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }

  void negate_column(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw Error("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * x[k];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

/// Lexicographic order on (rows, cols, entries); used for deterministic tie-breaks.
bool lex_less(const IntMatrix& a, const IntMatrix& b);

RatMatrix to_rat(const IntMatrix& m);

/// B^t B.
RatMatrix gram(const RatMatrix& basis);
IntMatrix gram(const IntMatrix& basis);

/// Exact determinant by fraction-free (Bareiss) elimination.
Rat det(const RatMatrix& m);
Int det(const IntMatrix& m);

/// (a_ij B) block layout: row index i_A * B.rows + i_B, column j_A * B.cols + j_B.
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

RatMatrix inverse(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

Rat dot(const RatVector& a, const RatVector& b);
Int dot(const IntVector& a, const IntVector& b);

/// x^t G y
Rat bilinear(const RatMatrix& g, const IntVector& x, const IntVector& y);

/// Smallest positive integer d with d*m integral.
Int common_denominator(const RatMatrix& m);

}  // namespace grasslat

namespace grasslat {

/// Incremental exact rank test: try_add accepts a vector iff it is linearly
/// independent of the vectors accepted so far.
class IndependenceTracker {
 public:
  bool try_add(const IntVector& v);
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<RatVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace grasslat
