#pragma once

#include <cstddef>
#include <vector>

#include "tdlc/rational.hpp"

namespace tdlc {

// Dense matrix over an exact scalar ring. Sizes stay desk-scale (dim <= 8 or
// so); no effort is spent on asymptotics.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const Mat& other) const { return !(*this == other); }

  Mat operator*(const Mat& other) const {
    if (cols_ != other.rows_)
      fail(ErrorKind::DimMismatch, "matrix product shape mismatch");
    Mat out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j)
          out.at(i, j) += a * other.at(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (cols_ != v.size())
      fail(ErrorKind::DimMismatch, "matrix-vector shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  // col_a -= f * col_b
  void submul_col(std::size_t a, const T& f, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, a) -= f * at(i, b);
  }

  void submul_row(std::size_t a, const T& f, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) -= f * at(b, j);
  }

  void scale_col(std::size_t c, const T& f) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, c) *= f;
  }

  Mat transposed() const {
    Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;

// Exact determinant / inverse by fraction-free-enough Gaussian elimination.
Rat det(const RatMat& m);
RatMat inverse(const RatMat& m);  // throws Singular

IntMat int_mat_from_rat(const RatMat& m);  // throws unless all entries integral

}  // namespace tdlc
