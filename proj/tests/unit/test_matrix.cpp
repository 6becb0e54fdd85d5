#include <doctest.h>

#include "oracles.hpp"
#include "pseudosusy/matrix.hpp"

using namespace psusy;

namespace {

BandMatrix random_band(std::size_t r, std::size_t c, int lo, int up, std::mt19937& rng) {
  std::normal_distribution<double> d;
  BandMatrix b(r, c, lo, up);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (b.in_band(i, j)) b.set(i, j, Complex(d(rng), d(rng)));
  return b;
}

double dist(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).frobenius_norm(); }

}  // namespace

TEST_CASE("band products and sums agree with dense arithmetic") {
  std::mt19937 rng(7);
  const BandMatrix a = random_band(9, 7, 2, 1, rng);
  const BandMatrix b = random_band(7, 8, 1, 2, rng);
  CHECK(dist((a * b).to_dense(), a.to_dense() * b.to_dense()) < 1e-13);
  const BandMatrix c = random_band(9, 7, 0, 3, rng);
  CHECK(dist((a + c).to_dense(), a.to_dense() + c.to_dense()) < 1e-14);
  CHECK(dist((a - c).to_dense(), a.to_dense() - c.to_dense()) < 1e-14);
  CHECK(dist(a.adjoint().to_dense(), a.to_dense().adjoint()) == 0.0);
  CHECK(dist(a.transpose().to_dense(), a.to_dense().transpose()) == 0.0);
  CHECK(a.frobenius_norm() == doctest::Approx(a.to_dense().frobenius_norm()));
}

TEST_CASE("band apply and reversal") {
  std::mt19937 rng(3);
  const BandMatrix a = random_band(6, 5, 1, 1, rng);
  CVector v = {1.0, Complex(0, 1), -2.0, 0.5, Complex(1, 1)};
  const CVector r1 = a.apply(v);
  const CVector r2 = a.to_dense().apply(v);
  CHECK(norm2(r1 - r2) < 1e-14);
  const DenseMatrix rev = a.reversed().to_dense();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(rev(i, j) == a.get(5 - i, 4 - j));
  CHECK(a.get(0, 4) == Complex(0.0));
}

TEST_CASE("dense helpers") {
  DenseMatrix a = DenseMatrix::identity(3);
  a(0, 2) = Complex(2, 1);
  CHECK(a.trace() == Complex(3.0));
  DenseMatrix big(5, 5);
  big.set_block(1, 2, a);
  CHECK(big(1, 4) == Complex(2, 1));
  CHECK(dist(big.block(1, 2, 3, 3), a) == 0.0);
  CHECK(dot(CVector{Complex(0, 1)}, CVector{Complex(0, 1)}) == Complex(1.0));
  CHECK(norm2(scaled(CVector{3.0, 4.0}, 2.0)) == doctest::Approx(10.0));
}
