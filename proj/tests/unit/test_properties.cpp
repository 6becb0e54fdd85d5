#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pseudosusy/pseudosusy.hpp"

using namespace psusy;

namespace {

std::vector<ModelSpec> random_models(std::mt19937& rng, int count) {
  std::uniform_real_distribution<double> u(0.1, 2.5);
  std::vector<ModelSpec> out;
  for (int k = 0; k < count; ++k) {
    out.push_back(ModelSpec::scarf2(u(rng), u(rng), u(rng)));
    out.push_back(ModelSpec::pt_oscillator(u(rng), k % 2 ? 1 : -1, 0.2 + 0.5 * u(rng), u(rng)));
    out.push_back(ModelSpec::scalar_tanh(1.0 + u(rng), u(rng) - 1.0, u(rng)));
  }
  return out;
}

bool conj_closed(const std::vector<Complex>& v, double tol) {
  std::vector<Complex> c;
  for (auto z : v) c.push_back(std::conj(z));
  return oracle::max_matching_gap(v, c) <= tol;
}

}  // namespace

TEST_CASE("factored identities hold for random parameters and grids") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> n(5, 90);
  std::uniform_real_distribution<double> xm(2.0, 9.0);
  for (const auto& m : random_models(rng, 6)) {
    const Grid g = build_grid(xm(rng), static_cast<std::size_t>(n(rng)));
    const auto r = check_intertwining(m, g);
    CHECK(r.r1 <= 1e-12);
    CHECK(r.r2 <= 1e-12);
    CHECK(check_pseudo_hermiticity(m, g, 1) <= 1e-12);
    CHECK(check_pseudo_hermiticity(m, g, 2) <= 1e-12);
    CHECK(check_pseudo_adjoint(m, g).residual <= 1e-12);
    for (const auto& rec : supercharge_algebra(m, g)) CHECK(rec.residual <= 1e-12);
  }
}

TEST_CASE("PT-symmetric partner potentials for random parameters") {
  std::mt19937 rng(12);
  for (const auto& m : random_models(rng, 5)) {
    CHECK(pt_residual_partner(m, 1) <= 1e-11);
    CHECK(pt_residual_partner(m, 2) <= 1e-11);
    if (m.sector == Sector::Pseudoscalar) CHECK(pt_residual_potential(m) <= 1e-12);
  }
}

TEST_CASE("PT symmetry makes spectra closed under conjugation") {
  std::mt19937 rng(13);
  for (const auto& m : random_models(rng, 2)) {
    const Grid g = build_grid(6.0, 40);
    for (int i = 1; i <= 2; ++i) {
      const auto v = oracle::eigenvalues(schrodinger_matrix(m, g, i, Construction::Factored).to_dense());
      CHECK(conj_closed(v, 1e-8 * (1 + g.n_points / (g.h * g.h))));
    }
  }
}

TEST_CASE("nonzero spectra of LM and ML coincide") {
  std::mt19937 rng(14);
  for (const auto& m : random_models(rng, 2)) {
    const Grid g = build_grid(5.0, 30);
    const auto a = eigen_dense(schrodinger_matrix(m, g, 1, Construction::Factored), false);
    const auto b = eigen_dense(schrodinger_matrix(m, g, 2, Construction::Factored), false);
    const auto r = match_spectra(a, b, true);
    CHECK(r.zero_modes_a.size() + r.zero_modes_b.size() == 1);
    for (const auto& p : r.matched) CHECK(p.gap <= 1e-9 * a.matrix_norm);
    CHECK(r.unmatched_a.empty());
    CHECK(r.unmatched_b.empty());
  }
}

TEST_CASE("real superpotential reduces to Hermitian supersymmetry") {
  const ModelSpec m = ModelSpec::scarf2(1.0, 1.0);  // V_p = 2 tanh x
  const Grid g = build_grid(10.0, 120);
  for (int i = 1; i <= 2; ++i) {
    const DenseMatrix h = schrodinger_matrix(m, g, i, Construction::Factored).to_dense();
    CHECK((h - h.adjoint()).frobenius_norm() == 0.0);
    for (auto z : eigen_dense(h, false).values()) {
      CHECK(std::abs(z.imag()) <= 1e-10 * (1 + std::abs(z)));
      CHECK(z.real() >= -1e-10);
    }
  }
}

TEST_CASE("Dirac eigenvalues square to the partner spectra") {
  std::mt19937 rng(15);
  for (const auto& m : random_models(rng, 2)) {
    if (m.sector != Sector::Pseudoscalar) continue;
    const Grid g = build_grid(5.0, 25);
    const auto e = oracle::eigenvalues(dirac_matrix(m, g));
    const auto h1 = oracle::eigenvalues(schrodinger_matrix(m, g, 1, Construction::Factored).to_dense());
    const auto h2 = oracle::eigenvalues(schrodinger_matrix(m, g, 2, Construction::Factored).to_dense());
    for (auto z : e) {
      const Complex s = z * z - m.mass * m.mass;
      double best = 1e300;
      for (auto w : h1) best = std::min(best, std::abs(s - w));
      for (auto w : h2) best = std::min(best, std::abs(s - w));
      CHECK(best <= 1e-7 * (1 + std::abs(z * z)));
    }
  }
}

TEST_CASE("massless Dirac spectrum is symmetric apart from one zero mode") {
  const ModelSpec m = ModelSpec::scarf2(1.25, 0.75, 0.0);
  const Grid g = build_grid(8.0, 30);
  auto v = oracle::eigenvalues(dirac_matrix(m, g));
  std::size_t zeros = 0;
  std::vector<Complex> rest;
  for (auto z : v) {
    if (std::abs(z) < 1e-8) ++zeros;
    else rest.push_back(z);
  }
  CHECK(zeros == 1);
  std::vector<Complex> neg;
  for (auto z : rest) neg.push_back(-z);
  CHECK(oracle::max_matching_gap(rest, neg) < 1e-8);
}

TEST_CASE("grids are mirror symmetric and refinement nests them") {
  for (std::size_t n : {3u, 10u, 57u}) {
    const Grid g = build_grid(3.5, n);
    for (std::size_t k = 0; k < n; ++k) CHECK(g.nodes[k] == -g.nodes[n - 1 - k]);
    const Grid f = g.refined();
    for (std::size_t k = 0; k < n; ++k) CHECK(f.nodes[2 * k + 1] == doctest::Approx(g.nodes[k]));
    for (std::size_t k = 0; k <= n; ++k) CHECK(f.nodes[2 * k] == doctest::Approx(g.edges[k]));
  }
}
