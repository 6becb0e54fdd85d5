#pragma once

// Grids and matrix representations of L, M, the partner Hamiltonians, the
// Dirac operator and the parity operator.
//
// The discretization is staggered. Functions live either on the n interior
// nodes x_j (Dirichlet at ±x_max) or on the n+1 cell midpoints ("edges")
// y_e between consecutive nodes and walls. The forward difference G maps
// nodes to edges; the superpotential is sampled on edges and transported
// with the two-point average A. One first-order operator is -G + w A (or
// G + w A) and its partner is the plain transpose, so LM and ML are
// tridiagonal, parity flips G exactly and the nonzero spectra of LM and ML
// coincide while their kernels may differ by one state.

#include <cstddef>
#include <vector>

#include "pseudosusy/matrix.hpp"
#include "pseudosusy/models.hpp"

namespace psusy {

enum class Lattice { Nodes, Edges };

struct Grid {
  double x_max = 0.0;
  std::size_t n_points = 0;  // interior nodes
  double h = 0.0;            // 2 x_max / (n_points + 1)
  std::vector<double> nodes;  // n_points, mirrored
  std::vector<double> edges;  // n_points + 1, mirrored

  double x_min() const { return -x_max; }
  const std::vector<double>& points(Lattice lattice) const;
  std::size_t size(Lattice lattice) const { return points(lattice).size(); }
  /// Same box, spacing halved: 2 n_points + 1 nodes. Old nodes and edges
  /// both become nodes of the refined grid.
  Grid refined() const;
};

/// Symmetric grid on [-x_max, x_max] with n_points interior nodes.
/// Throws ArgumentError unless x_max > 0 and n_points >= 3.
Grid build_grid(double x_max, std::size_t n_points);

/// Which lattice carries the upper (sector 1) and lower (sector 2) spinor
/// component.
struct StaggeredLayout {
  Lattice upper = Lattice::Nodes;
  Lattice lower = Lattice::Edges;

  Lattice of_sector(int i) const { return i == 1 ? upper : lower; }
};

/// The upper component sits on the edges exactly when the zero mode is
/// ker M (sector 1); otherwise it sits on the nodes.
StaggeredLayout layout_for(const ModelSpec& model);

struct FirstOrderOps {
  BandMatrix L;  // lower lattice -> upper lattice, d/dx + w
  BandMatrix M;  // upper lattice -> lower lattice, -d/dx + w
  StaggeredLayout layout;
};

FirstOrderOps first_order_ops(const ModelSpec& model, const Grid& grid);

/// Forward difference (edges <- nodes) and two-point average.
BandMatrix forward_difference(const Grid& grid);
BandMatrix edge_average(const Grid& grid);

/// Three-point Laplacian -d²/dx² on one lattice: G^T G on the nodes
/// (Dirichlet), G G^T on the edges (zero flux through the walls).
BandMatrix laplacian(const Grid& grid, Lattice lattice);

enum class Construction { Direct, Factored };

/// H_i as a tridiagonal matrix. Factored: L M (i = 1) or M L (i = 2).
/// Direct: laplacian + diag(U_i) on the sector's lattice.
BandMatrix schrodinger_matrix(const ModelSpec& model, const Grid& grid, int i,
                              Construction construction,
                              DerivativePolicy policy = DerivativePolicy::Analytic);

/// [[m I, -i L], [i M, -m I]], dimension 2 n_points + 1, upper component
/// first. Pseudoscalar sector only (ArgumentError otherwise).
DenseMatrix dirac_matrix(const ModelSpec& model, const Grid& grid);

/// The same operator with the two components interleaved in order of
/// increasing position, which makes it banded. order[k] is the row of
/// dirac_matrix that becomes row k here.
struct DiracBand {
  BandMatrix matrix;
  std::vector<std::size_t> order;
};
DiracBand dirac_band(const ModelSpec& model, const Grid& grid);

/// The reversal permutation on one lattice (dense). P² = I.
DenseMatrix parity_matrix(const Grid& grid, Lattice lattice);

/// exp(-x² / (2 width²)) sampled on a lattice.
CVector gaussian_probe(const Grid& grid, Lattice lattice, double width);

/// ||(H_direct - H_factored) f|| / ||f|| for the Gaussian probe f.
double action_residual(const ModelSpec& model, const Grid& grid, int i,
                       double width,
                       DerivativePolicy policy = DerivativePolicy::Analytic);

/// Probe widths used by the action checks, proportional to x_max.
std::vector<double> probe_widths(const Grid& grid);

}  // namespace psusy
