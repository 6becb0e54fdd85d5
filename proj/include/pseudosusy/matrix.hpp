#pragma once

// Complex matrices for discretized operators. BandMatrix stores a fixed set
// of contiguous diagonals of a possibly rectangular matrix; DenseMatrix is
// row-major. Products of banded matrices stay banded and are exact
// reorderings of the dense products (same terms, same summation order).

#include <cstddef>
#include <vector>

#include "pseudosusy/types.hpp"

namespace psusy {

class DenseMatrix;

class BandMatrix {
 public:
  BandMatrix() = default;
  // Diagonals with offset d = col - row in [-lower, upper] are stored.
  BandMatrix(std::size_t rows, std::size_t cols, int lower, int upper);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int lower() const { return lower_; }
  int upper() const { return upper_; }
  /// Largest |col - row| over stored diagonals.
  int bandwidth() const;

  bool in_band(std::size_t r, std::size_t c) const;
  Complex get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Complex v);

  static BandMatrix diagonal(const CVector& d);
  static BandMatrix identity(std::size_t n);

  BandMatrix transpose() const;
  BandMatrix adjoint() const;
  /// Entry (r, c) of the result is entry (R-1-r, C-1-c) of this: the
  /// conjugation P_rows * A * P_cols by the reversal permutations.
  BandMatrix reversed() const;
  BandMatrix scaled(Complex s) const;

  DenseMatrix to_dense() const;
  CVector apply(const CVector& v) const;
  double frobenius_norm() const;

 private:
  std::size_t index(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<Complex> data_;  // rows_ x (lower_ + upper_ + 1)
};

BandMatrix operator*(const BandMatrix& a, const BandMatrix& b);
BandMatrix operator+(const BandMatrix& a, const BandMatrix& b);
BandMatrix operator-(const BandMatrix& a, const BandMatrix& b);

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  static DenseMatrix identity(std::size_t n);

  DenseMatrix adjoint() const;
  DenseMatrix transpose() const;
  DenseMatrix scaled(Complex s) const;
  /// Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& block);
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                    std::size_t nc) const;

  CVector apply(const CVector& v) const;
  double frobenius_norm() const;
  Complex trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Product skipping zero entries of the left factor, summing over the inner
/// index in ascending order.
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

double norm2(const CVector& v);
CVector operator-(const CVector& a, const CVector& b);
CVector scaled(const CVector& v, Complex s);
Complex dot(const CVector& a, const CVector& b);  // conj(a) . b

}  // namespace psusy
