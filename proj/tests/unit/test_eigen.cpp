#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "pseudosusy/eigen.hpp"
#include "pseudosusy/errors.hpp"

using namespace psusy;

namespace {

DenseMatrix companion(const std::vector<Complex>& coeffs) {
  // monic z^n + c_{n-1} z^{n-1} + ... + c_0, coeffs = {c_0, ..., c_{n-1}}
  const std::size_t n = coeffs.size();
  DenseMatrix c(n, n);
  for (std::size_t k = 1; k < n; ++k) c(k, k - 1) = 1.0;
  for (std::size_t k = 0; k < n; ++k) c(k, n - 1) = -coeffs[k];
  return c;
}

Spectrum from_values(const std::vector<Complex>& v) {
  Spectrum s;
  for (auto z : v) s.pairs.push_back({z, {}, 0.0, true});
  s.dimension = v.size();
  s.matrix_norm = 1.0;
  return s;
}

}  // namespace

TEST_CASE("small exact spectra") {
  DenseMatrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = Complex(2, 1);
  d(2, 2) = -3.0;
  const auto s = eigen_dense(d, true);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s.pairs[0].value - (-3.0)) < 1e-14);
  CHECK(std::abs(s.pairs[1].value - 1.0) < 1e-14);
  CHECK(std::abs(s.pairs[2].value - Complex(2, 1)) < 1e-14);
  DenseMatrix r(2, 2);
  r(0, 1) = 1.0;
  r(1, 0) = -1.0;
  const auto sr = eigen_dense(r, false);
  CHECK(std::abs(sr.pairs[0].value - Complex(0, -1)) < 1e-14);
  CHECK(std::abs(sr.pairs[1].value - Complex(0, 1)) < 1e-14);
}

TEST_CASE("roots of unity from companion matrices") {
  for (int n : {3, 5}) {
    std::vector<Complex> c(n, 0.0);
    c[0] = -1.0;
    const auto s = eigen_dense(companion(c), true);
    REQUIRE(s.size() == static_cast<std::size_t>(n));
    std::vector<Complex> roots;
    for (int k = 0; k < n; ++k) roots.push_back(std::polar(1.0, 2 * M_PI * k / n));
    CHECK(oracle::max_matching_gap(s.values(), roots) < 1e-10);
    for (const auto& p : s.pairs) CHECK(p.residual <= 1e-10);
  }
}

TEST_CASE("random complex matrices against an independent solver") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + (trial * 13) % 63;
    const DenseMatrix a = oracle::random_matrix(n, rng);
    const Spectrum s = eigen_dense(a, true);
    REQUIRE(s.size() == n);
    Complex sum = 0.0;
    for (const auto& p : s.pairs) {
      CHECK(p.residual <= 1e-10);
      CHECK(p.converged);
      CHECK(norm2(p.vector) == doctest::Approx(1.0).epsilon(1e-12));
      sum += p.value;
    }
    CHECK(std::abs(sum - a.trace()) <= 1e-8 * std::max(1.0, std::abs(a.trace())) + 1e-8 * a.frobenius_norm());
    CHECK(oracle::max_matching_gap(s.values(), oracle::eigenvalues(a)) < 1e-8 * a.frobenius_norm());
  }
}

TEST_CASE("selected vectors and band input") {
  std::mt19937 rng(5);
  std::normal_distribution<double> d;
  BandMatrix b(30, 30, 1, 1);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j)
      if (b.in_band(i, j)) b.set(i, j, Complex(d(rng), d(rng)));
  const auto s = eigen_dense_selected(b, [](Complex z) { return z.real() > 0; });
  CHECK(oracle::max_matching_gap(s.values(), oracle::eigenvalues(b.to_dense())) < 1e-10);
  for (const auto& p : s.pairs) {
    CHECK(p.vector.empty() == !(p.value.real() > 0));
    if (!p.vector.empty()) CHECK(p.residual <= 1e-10);
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(eigen_dense(DenseMatrix(2, 3), false), ArgumentError);
  DenseMatrix nan(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigen_dense(nan, false), ArgumentError);
}

TEST_CASE("filter_physical") {
  const Spectrum a = from_values({0.0, 1.0, 2.0, 5.0});
  CHECK(filter_physical(a, a, 1e-3).size() == 4);
  const Spectrum b = from_values({0.0, 1.0, 2.0 + 10 * 1e-3 * 3.0, 5.0});
  const Spectrum f = filter_physical(a, b, 1e-3);
  CHECK(f.size() == 3);
  CHECK(filter_physical(a, a, 1e-3, 3.0).size() == 3);
  // each coarse value is used at most once
  const Spectrum dup = from_values({1.0, 1.0});
  CHECK(filter_physical(from_values({1.0}), dup, 1e-3).size() == 1);
}

TEST_CASE("match_spectra") {
  const Spectrum a = from_values({0.0, 3.0, 8.0});
  const auto same = match_spectra(a, a, false);
  CHECK(same.matched.size() == 3);
  for (const auto& m : same.matched) CHECK(m.gap == 0.0);
  const Spectrum b = from_values({3.0 + 1e-9, 8.0});
  const auto r = match_spectra(a, b, true);
  CHECK(r.zero_modes_a.size() == 1);
  CHECK(r.zero_modes_b.empty());
  CHECK(r.matched.size() == 2);
  CHECK(r.unmatched_a.empty());
  const auto r2 = match_spectra(a, b, false);
  CHECK(r2.unmatched_a.size() == 1);
  CHECK(std::abs(r2.unmatched_a[0]) < 1e-12);
  CHECK(is_zero_mode(1e-9, 10.0));
  CHECK(!is_zero_mode(1e-3, 10.0));
}
