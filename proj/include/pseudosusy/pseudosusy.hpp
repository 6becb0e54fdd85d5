#pragma once

// Matrix-level verification of the pseudo-supersymmetry identities, the
// eigenfunction transport between partner Hamiltonians, and assembly of
// the Dirac spectrum from the partner spectra.

#include <optional>
#include <string>
#include <vector>

#include "pseudosusy/discretize.hpp"
#include "pseudosusy/eigen.hpp"
#include "pseudosusy/models.hpp"

namespace psusy {

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // residual <= tolerance
  Construction mode = Construction::Factored;
  std::string notes;
};

CheckRecord make_record(std::string name, double residual, double tolerance,
                        Construction mode, std::string notes = {});

struct VerificationReport {
  ModelSpec model;
  double x_max = 0.0;
  std::size_t n_points = 0;
  std::vector<CheckRecord> checks;

  bool all_pass() const;
};

struct VerifyOptions {
  double tol_eig = 1e-8;
  double tol_match = 1e-3;
  DerivativePolicy policy = DerivativePolicy::Analytic;
};

// ---- exact identities ----------------------------------------------------

struct IntertwiningResiduals {
  double r1 = 0.0;  // H2 M - M H1
  double r2 = 0.0;  // L H2 - H1 L
};

/// Factored: Frobenius residuals relative to ||M||_F and ||L||_F.
/// Direct: the same operators with the direct H_i, applied to the Gaussian
/// probes; the largest ||(...) f|| / ||f|| over the probe widths.
IntertwiningResiduals check_intertwining(
    const ModelSpec& model, const Grid& grid,
    Construction mode = Construction::Factored,
    DerivativePolicy policy = DerivativePolicy::Analytic);

struct PseudoAdjointResult {
  double residual = 0.0;     // ||M + P L^dagger P||_F / ||M||_F
  double pt_residual = 0.0;  // pt_residual_potential (pseudoscalar law)
  bool pt_violation = false;  // pt_residual > 1e-8
};

PseudoAdjointResult check_pseudo_adjoint(const ModelSpec& model, const Grid& grid);

/// ||P H_i^dagger P - H_i||_F / ||H_i||_F.
double check_pseudo_hermiticity(const ModelSpec& model, const Grid& grid, int i,
                                Construction mode = Construction::Factored,
                                DerivativePolicy policy = DerivativePolicy::Analytic);

/// Records for Q² = 0, Q#² = 0, {Q, Q#} = diag(LM, ML), the commutators
/// with {Q, Q#}, the signed pseudo-adjoint P Q^dagger P = -Q#, and (for the
/// pseudoscalar sector) D² = {Q, Q#} + m² I.
std::vector<CheckRecord> supercharge_algebra(const ModelSpec& model,
                                             const Grid& grid);

// ---- spectra -------------------------------------------------------------

/// Upper edge of the window in which box-converged bound states are
/// sought: the continuum threshold, or x_max² / 2 for confining models.
double physical_window(const ModelSpec& model, const Grid& grid);

struct SectorSpectra {
  Spectrum coarse[2];    // full spectra on the given grid (vectors in window)
  Spectrum fine[2];      // full spectra on grid.refined() (values only)
  Spectrum physical[2];  // fine values confirmed by the coarse grid
  Spectrum physical_coarse[2];  // coarse pairs (with vectors) confirmed by the fine grid
  double window = 0.0;
};

/// Spectra of H1 and H2 with two-grid filtering (factored construction
/// unless `mode` asks for the direct one).
SectorSpectra sector_spectra(const ModelSpec& model, const Grid& grid,
                             const VerifyOptions& options = {},
                             Construction mode = Construction::Factored);

struct IsospectralityResult {
  MatchResult match;       // physical H1 vs physical H2, zero modes set aside
  double max_gap = 0.0;    // over matched nonzero pairs
  std::size_t zero_modes[2] = {0, 0};  // normalizable zero modes per sector
  std::size_t box_modes[2] = {0, 0};   // exact zero modes pinned to the walls
  std::optional<int> zero_mode_sector;
  bool zero_mode_count_ok = false;
  double max_imag = 0.0;   // largest |im ε| / (1 + |re ε|) over physical levels
  double min_real = 0.0;   // smallest re ε over physical levels
  std::vector<CheckRecord> records;
};

IsospectralityResult isospectrality_check(const ModelSpec& model, const Grid& grid,
                                          const VerifyOptions& options = {});
IsospectralityResult isospectrality_check(const ModelSpec& model, const Grid& grid,
                                          const SectorSpectra& spectra);

// ---- eigenfunction transport ---------------------------------------------

struct MapOutcome {
  enum class Kind { Mapped, GroundStateAnnihilated };
  Kind kind = Kind::Mapped;
  EigenPair pair;             // unit-norm H2 eigenpair (Mapped only)
  double mapped_norm = 0.0;   // ||(i / (E + m)) M v1|| before normalization
  double annihilation_ratio = 0.0;  // ||M v1|| / ||v1||
  Complex energy;             // E = sign sqrt(m² + ε)
  double eigenvalue_gap = 0.0;  // |Rayleigh quotient of v2 on H2 - ε|
};

/// v2 = (i / (E + m)) M v1 for an H1 eigenpair on the sector-1 lattice.
/// Reports GroundStateAnnihilated when ||M v1|| <= 1e-6 ||v1||; throws
/// DivergentMap when |E + m| < 1e-8. The recorded residual is
/// ||H2 v2 - ε v2|| / (||H2||_F ||v2||).
MapOutcome map_eigenfunction(const ModelSpec& model, const Grid& grid,
                             const EigenPair& pair, int sign);

/// ||L v|| / ||v|| for an H2 eigenvector: the annihilation test for a
/// zero mode that lives in sector 2.
double partner_annihilation_ratio(const ModelSpec& model, const Grid& grid,
                                  const CVector& v2);

// ---- Dirac spectrum ------------------------------------------------------

struct DiracCheckResult {
  std::vector<Complex> levels;  // dirac_matrix eigenvalues confirmed by the fine grid
  std::vector<Complex> fine_levels;  // partner values used for the confirmation
  double max_relation_gap = 0.0;     // max over levels of min |E² - m² - ε| / (1 + |E²|)
  double max_imag = 0.0;
  bool plus_m_present = false;
  bool minus_m_present = false;
  std::optional<int> zero_mode_sector;
  std::vector<CheckRecord> records;
};

/// Eigenvalues of the Dirac matrix on `grid` (diagonalized in the banded
/// interleaved ordering). The refined-grid partner spectrum is assembled
/// from the exact relation spec(D) = {±sqrt(m² + ε) : ε in spec(smaller
/// block)} plus the index state ±m, so the doubled Dirac matrix is never
/// diagonalized.
DiracCheckResult dirac_spectrum_check(const ModelSpec& model, const Grid& grid,
                                      const VerifyOptions& options = {});
DiracCheckResult dirac_spectrum_check(const ModelSpec& model, const Grid& grid,
                                      const SectorSpectra& spectra,
                                      const VerifyOptions& options = {});

/// Eigenvalues of dirac_matrix(model, grid) via the banded ordering.
Spectrum dirac_eigenvalues(const ModelSpec& model, const Grid& grid,
                           const VerifyOptions& options = {});

// ---- closed forms --------------------------------------------------------

struct AlignmentResult {
  double defect = 1.0;  // 1 - |<u, v>| / (||u|| ||v||)
  int sector = 1;
  double analytic_level = 0.0;
  Complex numeric_level;
};

/// Alignment of the closed-form eigenfunction n (zero-mode sector) with the
/// numeric eigenvector of that sector's factored Hamiltonian on `grid`.
/// Throws RangeError outside the bound range or when no numeric level lies
/// within 0.5 of the closed-form energy.
AlignmentResult analytic_vs_numeric(const ModelSpec& model, const Grid& grid,
                                    int n, const VerifyOptions& options = {});

// ---- driver --------------------------------------------------------------

/// Names accepted by run_verification.
const std::vector<std::string>& known_checks();

/// Runs the named checks in the order given. Direct mode adds the
/// differential-limit variants of the identity checks.
VerificationReport run_verification(const ModelSpec& model, const Grid& grid,
                                    const std::vector<std::string>& checks,
                                    Construction mode = Construction::Factored,
                                    const VerifyOptions& options = {});

}  // namespace psusy
