#pragma once

// Superpotential families, their partner potentials, closed-form spectra and
// eigenfunctions, and PT-symmetry residuals.
//
// Conventions. Every model exposes a factorization superpotential w(x) such
// that L = d/dx + w, M = -d/dx + w, H1 = LM = -d² + w² + w', H2 = ML =
// -d² + w² - w'. For the pseudoscalar coupling w = V_p. For the scalar
// coupling w = -W_s with W_s = V_s + m, which puts Û1 = W_s² - W_s' in H1.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pseudosusy/types.hpp"

namespace psusy {

enum class ModelKind { ScarfII, PTOscillator, ScalarTanh, CustomSampled };
enum class Sector { Pseudoscalar, Scalar };

struct ScarfParams {
  double p = 1.25;
  double q = 0.75;
};

struct OscillatorParams {
  double a_osc = 0.4;  // alpha
  int kappa = 1;       // quasi-parity, +1 or -1
  double c = 0.5;      // contour shift, z = x - i c
};

struct ScalarTanhParams {
  double lambda = 4.0;
  double a_shift = 0.5;
};

// Tabulated W on strictly increasing abscissae. W is V_p for the
// pseudoscalar sector and W_s = V_s + m for the scalar sector.
struct SampledTable {
  std::vector<double> x;
  CVector w;
};

using ModelParams =
    std::variant<ScarfParams, OscillatorParams, ScalarTanhParams, SampledTable>;

struct ModelSpec {
  ModelKind kind = ModelKind::ScarfII;
  Sector sector = Sector::Pseudoscalar;
  double mass = 1.0;
  ModelParams params = ScarfParams{};

  // Validating factories; throw ArgumentError on bad parameters.
  static ModelSpec scarf2(double p, double q, double mass = 1.0);
  static ModelSpec pt_oscillator(double a_osc, int kappa, double c,
                                 double mass = 1.0);
  static ModelSpec scalar_tanh(double lambda, double a_shift,
                               double mass = 1.0);
  static ModelSpec custom_sampled(std::vector<double> x, CVector w,
                                  Sector sector = Sector::Pseudoscalar,
                                  double mass = 1.0);

  const ScarfParams& scarf() const;
  const OscillatorParams& oscillator() const;
  const ScalarTanhParams& scalar_tanh_params() const;
  const SampledTable& table() const;
};

std::string to_string(ModelKind kind);
std::string to_string(Sector sector);

// How derivatives of tabulated superpotentials are obtained. Closed-form
// models always use their analytic derivative.
enum class DerivativePolicy { Analytic, FiniteDifference };

/// V_p(x) for the pseudoscalar sector, W_s(x) = V_s(x) + m for the scalar
/// sector. The oscillator is evaluated at z = x - i c.
Complex superpotential_value(const ModelSpec& model, double x);

/// d/dx of superpotential_value. Throws DerivativeUnavailable for sampled
/// models under DerivativePolicy::Analytic.
Complex superpotential_derivative(
    const ModelSpec& model, double x,
    DerivativePolicy policy = DerivativePolicy::Analytic);

/// The interaction entering the Dirac operator: V_p, or V_s = W_s - m.
Complex interaction_value(const ModelSpec& model, double x);

/// Factorization superpotential w (V_p or -W_s) and its derivative.
Complex factor_superpotential(const ModelSpec& model, double x);
Complex factor_superpotential_derivative(
    const ModelSpec& model, double x,
    DerivativePolicy policy = DerivativePolicy::Analytic);

/// U_i(x) = w² + w' (i = 1) or w² - w' (i = 2). Closed forms for Scarf II
/// and the oscillator, W² ∓ W' otherwise.
Complex partner_potential(const ModelSpec& model, int i, double x,
                          DerivativePolicy policy = DerivativePolicy::Analytic);

// Which PT transformation law the interaction is tested against.
// Pseudoscalar: V(x) -> -conj V(-x). Scalar: V(x) -> conj V(-x).
enum class PtCondition { SectorDefault, Pseudoscalar, Scalar };

/// max over 200 symmetric sample points of |conj V(-x) + V(x)|
/// (pseudoscalar law) or |conj V(-x) - V(x)| (scalar law).
double pt_residual_potential(const ModelSpec& model,
                             PtCondition condition = PtCondition::SectorDefault);

/// max over 200 symmetric sample points of |conj U_i(-x) - U_i(x)|.
double pt_residual_partner(const ModelSpec& model, int i,
                           DerivativePolicy policy = DerivativePolicy::Analytic);

/// The symmetric half-width sampled by the PT residuals and used for
/// default grids: 12 for Scarf II and scalar tanh, 8 for the oscillator,
/// the largest symmetric window inside a sampled table.
double default_x_max(const ModelSpec& model);

/// Sector (1 or 2) owning the normalizable zero mode, read off the signs
/// of Re w at the ends of the default window: ker M = exp(∫w) needs
/// w(+inf) < 0 < w(-inf) (sector 1), ker L = exp(-∫w) the opposite
/// (sector 2). nullopt when neither is normalizable.
std::optional<int> zero_mode_sector(const ModelSpec& model);

/// Closed-form bound-state energies of H_i, truncated to max_count. The
/// zero-mode sector starts at n = 0, the partner sector at n = 1.
/// Scarf II: 2(p+q)n - n² for n < p+q. Oscillator: 4n.
/// Throws NotAvailable for scalar tanh and sampled models.
std::vector<double> analytic_levels(const ModelSpec& model, int i,
                                    std::size_t max_count = 64);

struct DiracLevels {
  std::vector<double> positive;
  std::vector<double> negative;
};

/// Closed-form Dirac energies. Each ε of the zero-mode sector maps to
/// ±sqrt(m² + ε) (pseudoscalar) or ±sqrt(ε) (scalar); the ground state
/// appears only with the sign carried by the zero mode.
DiracLevels dirac_levels(const ModelSpec& model, std::size_t max_count = 64);

/// The energy map for one Schrödinger eigenvalue: {+E, -E}.
std::vector<double> energy_map(const ModelSpec& model, double eps);

/// Closed-form eigenfunction n of the zero-mode sector (unnormalized).
/// Throws RangeError outside the bound range, NotAvailable for models
/// without closed forms.
Complex analytic_eigenfunction(const ModelSpec& model, int n, double x);

/// Number of closed-form bound states (nullopt when unbounded).
std::optional<int> bound_state_count(const ModelSpec& model);

/// Real part of the asymptotic value of w²; discrete levels lie below it.
/// nullopt for confining models.
std::optional<double> continuum_threshold(const ModelSpec& model);

/// Levels of H_i reported as companion-branch (opposite quasi-parity) for
/// the oscillator: 4n + 4 kappa a_osc, n >= 0 (empty for other models).
std::vector<double> companion_levels(const ModelSpec& model,
                                     std::size_t max_count = 64);

}  // namespace psusy
