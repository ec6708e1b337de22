#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qplane/scalar.hpp"

namespace qplane {

/// Dense matrix over the Gaussian rationals. Row-major, value semantics.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_zero() const;
  ExactMatrix adjoint() const;
  Eigen::MatrixXcd to_complex() const;

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const GaussRational& s) const;
  friend ExactMatrix operator*(const GaussRational& s, const ExactMatrix& m) { return m * s; }
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// [top; bottom]
  static ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom);
  /// [left, right]
  static ExactMatrix hstack(const ExactMatrix& left, const ExactMatrix& right);

  /// Largest squared modulus of an entry; zero iff the matrix is zero.
  mpq_class max_norm_squared() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> data_;
};

/// Rank by fraction-free (Bareiss) elimination over the Gaussian integers.
std::size_t exact_rank(const ExactMatrix& m);

/// Determinant of a square matrix, computed fraction-free.
GaussRational exact_determinant(const ExactMatrix& m);

/// Inverse by Gauss-Jordan elimination; throws BadParameter if singular.
ExactMatrix exact_inverse(const ExactMatrix& m);

}  // namespace qplane
