#include "pseudosusy/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "pseudosusy/errors.hpp"

namespace psusy {

namespace {

long as_long(std::size_t v) { return static_cast<long>(v); }

}  // namespace

BandMatrix::BandMatrix(std::size_t rows, std::size_t cols, int lower, int upper)
    : rows_(rows), cols_(cols), lower_(lower), upper_(upper) {
  if (lower + upper < 0) {
    throw ArgumentError("BandMatrix: empty band");
  }
  data_.assign(rows * static_cast<std::size_t>(lower + upper + 1), Complex(0.0));
}

int BandMatrix::bandwidth() const { return std::max(lower_, upper_); }

bool BandMatrix::in_band(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) return false;
  const long d = as_long(c) - as_long(r);
  return d >= -lower_ && d <= upper_;
}

std::size_t BandMatrix::index(std::size_t r, std::size_t c) const {
  const long d = as_long(c) - as_long(r);
  return r * static_cast<std::size_t>(lower_ + upper_ + 1) +
         static_cast<std::size_t>(d + lower_);
}

Complex BandMatrix::get(std::size_t r, std::size_t c) const {
  return in_band(r, c) ? data_[index(r, c)] : Complex(0.0);
}

void BandMatrix::set(std::size_t r, std::size_t c, Complex v) {
  if (!in_band(r, c)) {
    throw ArgumentError("BandMatrix::set outside stored band");
  }
  data_[index(r, c)] = v;
}

BandMatrix BandMatrix::diagonal(const CVector& d) {
  BandMatrix out(d.size(), d.size(), 0, 0);
  for (std::size_t k = 0; k < d.size(); ++k) out.set(k, k, d[k]);
  return out;
}

BandMatrix BandMatrix::identity(std::size_t n) {
  return diagonal(CVector(n, Complex(1.0)));
}

BandMatrix BandMatrix::transpose() const {
  BandMatrix out(cols_, rows_, upper_, lower_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (int d = -lower_; d <= upper_; ++d) {
      const long c = as_long(r) + d;
      if (c >= 0 && c < as_long(cols_)) {
        out.set(static_cast<std::size_t>(c), r, get(r, static_cast<std::size_t>(c)));
      }
    }
  }
  return out;
}

BandMatrix BandMatrix::adjoint() const {
  BandMatrix out = transpose();
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

BandMatrix BandMatrix::reversed() const {
  // offset c' - r' = (C-1-c) - (R-1-r) = -(c - r) + (C - R)
  const int shift = static_cast<int>(as_long(cols_) - as_long(rows_));
  BandMatrix out(rows_, cols_, upper_ - shift, lower_ + shift);
  if (out.lower_ + out.upper_ < 0) return out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (int d = -lower_; d <= upper_; ++d) {
      const long c = as_long(r) + d;
      if (c >= 0 && c < as_long(cols_)) {
        out.set(rows_ - 1 - r, cols_ - 1 - static_cast<std::size_t>(c),
                get(r, static_cast<std::size_t>(c)));
      }
    }
  }
  return out;
}

BandMatrix BandMatrix::scaled(Complex s) const {
  BandMatrix out = *this;
  for (auto& v : out.data_) v *= s;
  return out;
}

DenseMatrix BandMatrix::to_dense() const {
  DenseMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (int d = -lower_; d <= upper_; ++d) {
      const long c = as_long(r) + d;
      if (c >= 0 && c < as_long(cols_)) {
        out(r, static_cast<std::size_t>(c)) = get(r, static_cast<std::size_t>(c));
      }
    }
  }
  return out;
}

CVector BandMatrix::apply(const CVector& v) const {
  if (v.size() != cols_) throw ArgumentError("BandMatrix::apply size mismatch");
  CVector out(rows_, Complex(0.0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc = 0.0;
    for (int d = -lower_; d <= upper_; ++d) {
      const long c = as_long(r) + d;
      if (c >= 0 && c < as_long(cols_)) {
        acc += data_[index(r, static_cast<std::size_t>(c))] *
               v[static_cast<std::size_t>(c)];
      }
    }
    out[r] = acc;
  }
  return out;
}

double BandMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

BandMatrix operator*(const BandMatrix& a, const BandMatrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("BandMatrix product size mismatch");
  BandMatrix out(a.rows(), b.cols(), a.lower() + b.lower(), a.upper() + b.upper());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const long k_lo = std::max(0L, as_long(r) - a.lower());
    const long k_hi = std::min(as_long(a.cols()) - 1, as_long(r) + a.upper());
    const long c_lo = std::max(0L, as_long(r) - out.lower());
    const long c_hi = std::min(as_long(b.cols()) - 1, as_long(r) + out.upper());
    for (long c = c_lo; c <= c_hi; ++c) {
      Complex acc = 0.0;
      for (long k = k_lo; k <= k_hi; ++k) {
        if (!b.in_band(static_cast<std::size_t>(k), static_cast<std::size_t>(c))) continue;
        const Complex av = a.get(r, static_cast<std::size_t>(k));
        if (av == Complex(0.0)) continue;
        acc += av * b.get(static_cast<std::size_t>(k), static_cast<std::size_t>(c));
      }
      out.set(r, static_cast<std::size_t>(c), acc);
    }
  }
  return out;
}

namespace {

BandMatrix combine(const BandMatrix& a, const BandMatrix& b, double sb) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("BandMatrix sum size mismatch");
  }
  BandMatrix out(a.rows(), a.cols(), std::max(a.lower(), b.lower()),
                 std::max(a.upper(), b.upper()));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (int d = -out.lower(); d <= out.upper(); ++d) {
      const long c = as_long(r) + d;
      if (c < 0 || c >= as_long(a.cols())) continue;
      const auto cc = static_cast<std::size_t>(c);
      out.set(r, cc, a.get(r, cc) + sb * b.get(r, cc));
    }
  }
  return out;
}

}  // namespace

BandMatrix operator+(const BandMatrix& a, const BandMatrix& b) {
  return combine(a, b, 1.0);
}
BandMatrix operator-(const BandMatrix& a, const BandMatrix& b) {
  return combine(a, b, -1.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0)) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) out(k, k) = 1.0;
  return out;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

DenseMatrix DenseMatrix::scaled(Complex s) const {
  DenseMatrix out = *this;
  for (auto& v : out.data_) v *= s;
  return out;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw ArgumentError("DenseMatrix::set_block out of range");
  }
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw ArgumentError("DenseMatrix::block out of range");
  }
  DenseMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

CVector DenseMatrix::apply(const CVector& v) const {
  if (v.size() != cols_) throw ArgumentError("DenseMatrix::apply size mismatch");
  CVector out(rows_, Complex(0.0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc = 0.0;
    const Complex* row = &data_[r * cols_];
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

Complex DenseMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
  return t;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("DenseMatrix product size mismatch");
  DenseMatrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex* orow = &out.data()[r * n];
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex av = a(r, k);
      if (av == Complex(0.0)) continue;
      const Complex* brow = &b.data()[k * n];
      for (std::size_t c = 0; c < n; ++c) orow[c] += av * brow[c];
    }
  }
  return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("DenseMatrix sum size mismatch");
  }
  DenseMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] += b.data()[k];
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError("DenseMatrix difference size mismatch");
  }
  DenseMatrix out = a;
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] -= b.data()[k];
  return out;
}

double norm2(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

CVector operator-(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw ArgumentError("vector size mismatch");
  CVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

CVector scaled(const CVector& v, Complex s) {
  CVector out(v);
  for (auto& x : out) x *= s;
  return out;
}

Complex dot(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw ArgumentError("vector size mismatch");
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

}  // namespace psusy
