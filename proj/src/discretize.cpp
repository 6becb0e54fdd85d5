#include "pseudosusy/discretize.hpp"

#include <cmath>

#include "pseudosusy/errors.hpp"

namespace psusy {

namespace {

// Fills v (length count) with x_min + (k + offset) h, mirrored about zero.
std::vector<double> mirrored_points(double x_max, double h, std::size_t count,
                                    double offset) {
  std::vector<double> v(count);
  for (std::size_t k = 0; k < (count + 1) / 2; ++k) {
    const double x = -x_max + (static_cast<double>(k) + offset) * h;
    v[k] = x;
    v[count - 1 - k] = -x;
  }
  if (count % 2 == 1) v[count / 2] = 0.0;
  return v;
}

void require_pseudoscalar(const ModelSpec& model, const char* what) {
  if (model.sector != Sector::Pseudoscalar) {
    throw ArgumentError(std::string(what) + ": pseudoscalar sector only");
  }
}

}  // namespace

const std::vector<double>& Grid::points(Lattice lattice) const {
  return lattice == Lattice::Nodes ? nodes : edges;
}

Grid Grid::refined() const { return build_grid(x_max, 2 * n_points + 1); }

Grid build_grid(double x_max, std::size_t n_points) {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw ArgumentError("build_grid: x_max must be positive and finite");
  }
  if (n_points < 3) {
    throw ArgumentError("build_grid: n_points must be >= 3");
  }
  Grid g;
  g.x_max = x_max;
  g.n_points = n_points;
  g.h = 2.0 * x_max / static_cast<double>(n_points + 1);
  g.nodes = mirrored_points(x_max, g.h, n_points, 1.0);
  g.edges = mirrored_points(x_max, g.h, n_points + 1, 0.5);
  return g;
}

StaggeredLayout layout_for(const ModelSpec& model) {
  const auto zs = zero_mode_sector(model);
  if (zs && *zs == 1) return {Lattice::Edges, Lattice::Nodes};
  return {Lattice::Nodes, Lattice::Edges};
}

BandMatrix forward_difference(const Grid& grid) {
  const std::size_t n = grid.n_points;
  BandMatrix g(n + 1, n, 1, 0);
  const double inv_h = 1.0 / grid.h;
  for (std::size_t e = 0; e <= n; ++e) {
    if (e < n) g.set(e, e, inv_h);
    if (e >= 1) g.set(e, e - 1, -inv_h);
  }
  return g;
}

BandMatrix edge_average(const Grid& grid) {
  const std::size_t n = grid.n_points;
  BandMatrix a(n + 1, n, 1, 0);
  for (std::size_t e = 0; e <= n; ++e) {
    if (e < n) a.set(e, e, 0.5);
    if (e >= 1) a.set(e, e - 1, 0.5);
  }
  return a;
}

FirstOrderOps first_order_ops(const ModelSpec& model, const Grid& grid) {
  const auto layout = layout_for(model);
  CVector w(grid.edges.size());
  for (std::size_t e = 0; e < w.size(); ++e) {
    w[e] = factor_superpotential(model, grid.edges[e]);
  }
  const BandMatrix wa = BandMatrix::diagonal(w) * edge_average(grid);
  const BandMatrix g = forward_difference(grid);
  if (layout.upper == Lattice::Edges) {
    BandMatrix L = g + wa;
    BandMatrix M = L.transpose();
    return {std::move(L), std::move(M), layout};
  }
  BandMatrix M = wa - g;
  BandMatrix L = M.transpose();
  return {std::move(L), std::move(M), layout};
}

BandMatrix laplacian(const Grid& grid, Lattice lattice) {
  const BandMatrix g = forward_difference(grid);
  return lattice == Lattice::Nodes ? g.transpose() * g : g * g.transpose();
}

BandMatrix schrodinger_matrix(const ModelSpec& model, const Grid& grid, int i,
                              Construction construction,
                              DerivativePolicy policy) {
  if (i != 1 && i != 2) throw ArgumentError("sector index must be 1 or 2");
  if (construction == Construction::Factored) {
    const auto ops = first_order_ops(model, grid);
    return i == 1 ? ops.L * ops.M : ops.M * ops.L;
  }
  const Lattice lat = layout_for(model).of_sector(i);
  const auto& xs = grid.points(lat);
  CVector u(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    u[k] = partner_potential(model, i, xs[k], policy);
  }
  return laplacian(grid, lat) + BandMatrix::diagonal(u);
}

DenseMatrix dirac_matrix(const ModelSpec& model, const Grid& grid) {
  require_pseudoscalar(model, "dirac_matrix");
  const auto ops = first_order_ops(model, grid);
  const std::size_t n1 = ops.L.rows();
  const std::size_t n2 = ops.M.rows();
  DenseMatrix d(n1 + n2, n1 + n2);
  for (std::size_t k = 0; k < n1; ++k) d(k, k) = model.mass;
  for (std::size_t k = 0; k < n2; ++k) d(n1 + k, n1 + k) = -model.mass;
  d.set_block(0, n1, ops.L.to_dense().scaled(Complex(0.0, -1.0)));
  d.set_block(n1, 0, ops.M.to_dense().scaled(Complex(0.0, 1.0)));
  return d;
}

DiracBand dirac_band(const ModelSpec& model, const Grid& grid) {
  require_pseudoscalar(model, "dirac_band");
  const auto ops = first_order_ops(model, grid);
  const std::size_t n1 = ops.L.rows();
  const std::size_t n2 = ops.M.rows();
  const std::size_t dim = n1 + n2;
  // Edge e sits left of node e, so positions alternate edge, node, edge...
  const bool upper_on_edges = ops.layout.upper == Lattice::Edges;
  std::vector<std::size_t> order(dim);
  std::vector<std::size_t> where(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t idx = k / 2;
    const bool is_edge = (k % 2 == 0);
    const bool is_upper = (is_edge == upper_on_edges);
    order[k] = is_upper ? idx : n1 + idx;
    where[order[k]] = k;
  }
  BandMatrix b(dim, dim, 1, 1);
  auto put = [&](std::size_t r, std::size_t c, Complex v) {
    b.set(where[r], where[c], v);
  };
  for (std::size_t k = 0; k < n1; ++k) put(k, k, model.mass);
  for (std::size_t k = 0; k < n2; ++k) put(n1 + k, n1 + k, -model.mass);
  for (std::size_t r = 0; r < n1; ++r) {
    for (std::size_t c = 0; c < n2; ++c) {
      if (ops.L.in_band(r, c)) put(r, n1 + c, Complex(0.0, -1.0) * ops.L.get(r, c));
    }
  }
  for (std::size_t r = 0; r < n2; ++r) {
    for (std::size_t c = 0; c < n1; ++c) {
      if (ops.M.in_band(r, c)) put(n1 + r, c, Complex(0.0, 1.0) * ops.M.get(r, c));
    }
  }
  return {std::move(b), std::move(order)};
}

DenseMatrix parity_matrix(const Grid& grid, Lattice lattice) {
  const std::size_t n = grid.size(lattice);
  DenseMatrix p(n, n);
  for (std::size_t k = 0; k < n; ++k) p(k, n - 1 - k) = 1.0;
  return p;
}

CVector gaussian_probe(const Grid& grid, Lattice lattice, double width) {
  const auto& xs = grid.points(lattice);
  CVector f(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double t = xs[k] / width;
    f[k] = std::exp(-0.5 * t * t);
  }
  return f;
}

double action_residual(const ModelSpec& model, const Grid& grid, int i,
                       double width, DerivativePolicy policy) {
  const BandMatrix hd = schrodinger_matrix(model, grid, i, Construction::Direct, policy);
  const BandMatrix hf = schrodinger_matrix(model, grid, i, Construction::Factored);
  const CVector f = gaussian_probe(grid, layout_for(model).of_sector(i), width);
  return norm2(hd.apply(f) - hf.apply(f)) / norm2(f);
}

std::vector<double> probe_widths(const Grid& grid) {
  return {grid.x_max / 16.0, grid.x_max / 12.0, grid.x_max / 8.0};
}

}  // namespace psusy
