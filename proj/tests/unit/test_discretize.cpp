#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pseudosusy/discretize.hpp"
#include "pseudosusy/errors.hpp"

using namespace psusy;

TEST_CASE("build_grid") {
  const Grid g = build_grid(1.0, 3);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0] == doctest::Approx(-0.5));
  CHECK(g.nodes[1] == doctest::Approx(0.0));
  CHECK(g.nodes[2] == doctest::Approx(0.5));
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0] == doctest::Approx(-0.75));
  const Grid g2 = build_grid(2.0, 4);
  CHECK(g2.nodes[0] == doctest::Approx(-1.2));
  CHECK(g2.nodes[1] == doctest::Approx(-0.4));
  CHECK(g2.nodes[2] == doctest::Approx(0.4));
  CHECK(g2.nodes[3] == doctest::Approx(1.2));
  CHECK_THROWS_AS(build_grid(1.0, 2), ArgumentError);
  CHECK_THROWS_AS(build_grid(-1.0, 10), ArgumentError);
  const Grid f = g2.refined();
  CHECK(f.n_points == 9);
  CHECK(f.h == doctest::Approx(g2.h / 2));
  for (std::size_t k = 0; k < f.nodes.size(); ++k) CHECK(f.nodes[k] == -f.nodes[f.nodes.size() - 1 - k]);
}

TEST_CASE("difference operators") {
  const Grid g = build_grid(3.0, 11);
  const DenseMatrix G = forward_difference(g).to_dense();
  const DenseMatrix A = edge_average(g).to_dense();
  CHECK(G.rows() == 12);
  CHECK(G.cols() == 11);
  // forward difference of a linear function is its slope away from the walls
  CVector lin;
  for (double x : g.nodes) lin.push_back(2.0 * x + 1.0);
  const CVector d = G.apply(lin);
  for (std::size_t e = 1; e + 1 < d.size(); ++e) CHECK(std::abs(d[e] - 2.0) < 1e-12);
  const CVector av = A.apply(lin);
  for (std::size_t e = 1; e + 1 < av.size(); ++e)
    CHECK(std::abs(av[e] - (2.0 * g.edges[e] + 1.0)) < 1e-12);
  // parity relations P_e G P_n = -G, P_e A P_n = A
  const DenseMatrix Pn = parity_matrix(g, Lattice::Nodes);
  const DenseMatrix Pe = parity_matrix(g, Lattice::Edges);
  CHECK((Pe * G * Pn + G).frobenius_norm() == 0.0);
  CHECK((Pe * A * Pn - A).frobenius_norm() == 0.0);
  CHECK((laplacian(g, Lattice::Nodes).to_dense() - G.transpose() * G).frobenius_norm() < 1e-12);
}

TEST_CASE("first-order operators are transposes and factor the Hamiltonians") {
  const Grid g = build_grid(6.0, 40);
  for (const auto& m : {ModelSpec::scarf2(1.25, 0.75), ModelSpec::pt_oscillator(0.4, 1, 0.5),
                        ModelSpec::scalar_tanh(4.0, 0.5)}) {
    const FirstOrderOps ops = first_order_ops(m, g);
    CHECK((ops.L.to_dense() - ops.M.to_dense().transpose()).frobenius_norm() == 0.0);
    const BandMatrix h1 = schrodinger_matrix(m, g, 1, Construction::Factored);
    const BandMatrix h2 = schrodinger_matrix(m, g, 2, Construction::Factored);
    CHECK((h1.to_dense() - ops.L.to_dense() * ops.M.to_dense()).frobenius_norm() < 1e-12);
    CHECK((h2.to_dense() - ops.M.to_dense() * ops.L.to_dense()).frobenius_norm() < 1e-12);
    CHECK(h1.bandwidth() <= 3);
  }
}

TEST_CASE("Dirac matrix block layout") {
  const Grid g = build_grid(5.0, 20);
  const ModelSpec m = ModelSpec::scarf2(1.25, 0.75, 1.5);
  const DenseMatrix d = dirac_matrix(m, g);
  CHECK(d.rows() == 41);
  const FirstOrderOps ops = first_order_ops(m, g);
  const std::size_t nu = g.size(ops.layout.upper);
  CHECK(d(0, 0) == Complex(1.5));
  CHECK(d(40, 40) == Complex(-1.5));
  CHECK((d.block(0, nu, nu, 41 - nu) - ops.L.to_dense().scaled(Complex(0, -1))).frobenius_norm() == 0.0);
  // the banded ordering is a permutation of the block form
  const DiracBand b = dirac_band(m, g);
  const DenseMatrix bd = b.matrix.to_dense();
  for (std::size_t r = 0; r < 41; ++r)
    for (std::size_t c = 0; c < 41; ++c) CHECK(bd(r, c) == d(b.order[r], b.order[c]));
  CHECK_THROWS_AS(dirac_matrix(ModelSpec::scalar_tanh(4, 0.5), g), ArgumentError);
}

TEST_CASE("direct construction converges at second order") {
  const ModelSpec m = ModelSpec::scarf2(1.25, 0.75);
  const Grid g = build_grid(12.0, 200);
  const double w = probe_widths(g)[1];
  const double r1 = action_residual(m, g, 1, w);
  const double r2 = action_residual(m, build_grid(12.0, 401), 1, w);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
  // W = 0 gives identical constructions
  std::vector<double> xs = {-20, -10, 0, 10, 20};
  const ModelSpec zero = ModelSpec::custom_sampled(xs, CVector(5, 0.0));
  const DenseMatrix d1 = schrodinger_matrix(zero, g, 1, Construction::Direct, DerivativePolicy::FiniteDifference).to_dense();
  const DenseMatrix d2 = schrodinger_matrix(zero, g, 1, Construction::Factored, DerivativePolicy::FiniteDifference).to_dense();
  CHECK((d1 - d2).frobenius_norm() == 0.0);
}
