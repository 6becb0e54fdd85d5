#pragma once

// Dense eigensolver for complex non-Hermitian matrices and the spectrum
// bookkeeping used to separate converged bound states from box artifacts.
//
// Pipeline: balancing -> Householder reduction to upper Hessenberg form ->
// implicitly shifted complex QR with Givens rotations -> eigenvectors by
// inverse iteration on the Hessenberg matrix, mapped back through the
// reflectors and the balancing scale.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pseudosusy/matrix.hpp"

namespace psusy {

struct EigenPair {
  Complex value;
  CVector vector;        // unit Euclidean norm; empty when not requested
  double residual = 0.0;  // ||A v - value v|| / ||A||_F
  bool converged = true;  // residual <= tol_eig
};

struct Spectrum {
  std::vector<EigenPair> pairs;  // sorted by (re, im)
  std::size_t dimension = 0;
  double matrix_norm = 0.0;  // ||A||_F of the decomposed matrix
  bool has_vectors = false;

  std::vector<Complex> values() const;
  std::size_t size() const { return pairs.size(); }
};

struct EigenOptions {
  double tol_eig = 1e-8;
  bool balance = true;
};

/// All eigenvalues of a square matrix; vectors for every eigenvalue when
/// want_vectors. Throws ConvergenceError when the QR iteration exceeds
/// 60 * dimension sweeps, ArgumentError for non-square or non-finite input
/// or dimension above 4096. The input is never modified.
Spectrum eigen_dense(const DenseMatrix& a, bool want_vectors,
                     const EigenOptions& options = {});
Spectrum eigen_dense(const BandMatrix& a, bool want_vectors,
                     const EigenOptions& options = {});

/// All eigenvalues, with vectors only for those accepted by `select`
/// (the other pairs carry an empty vector).
Spectrum eigen_dense_selected(const DenseMatrix& a,
                              const std::function<bool(Complex)>& select,
                              const EigenOptions& options = {});
Spectrum eigen_dense_selected(const BandMatrix& a,
                              const std::function<bool(Complex)>& select,
                              const EigenOptions& options = {});

/// Sorts pairs by (re, im).
void sort_spectrum(Spectrum& s);

/// Keeps the pairs of `fine` that have a partner in `coarse` with
/// |λ - λ'| <= tol_match (1 + |λ|) and, when given, re λ < threshold.
/// Partners are assigned greedily in order of increasing distance,
/// each coarse value used at most once.
Spectrum filter_physical(const Spectrum& coarse, const Spectrum& fine,
                         double tol_match,
                         std::optional<double> threshold = std::nullopt);

struct MatchedPair {
  Complex a;
  Complex b;
  double gap = 0.0;
};

struct MatchResult {
  std::vector<MatchedPair> matched;
  std::vector<Complex> unmatched_a;
  std::vector<Complex> unmatched_b;
  std::vector<Complex> zero_modes_a;  // only filled with drop_zero_modes
  std::vector<Complex> zero_modes_b;
};

/// Relative zero-mode threshold: |λ| <= 1e-6 ||A||_F.
inline constexpr double kZeroModeRelTol = 1e-6;

bool is_zero_mode(Complex value, double matrix_norm);

/// Greedy nearest matching of eigenvalues (closest pairs first, no reuse).
/// With drop_zero_modes, zero modes of each side are set aside before
/// matching and reported separately.
MatchResult match_spectra(const Spectrum& a, const Spectrum& b,
                          bool drop_zero_modes);

}  // namespace psusy
