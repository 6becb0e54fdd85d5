#include "pseudosusy/models.hpp"

#include <algorithm>
#include <cmath>

#include "pseudosusy/errors.hpp"
#include "pseudosusy/specialfn.hpp"

namespace psusy {

namespace {

constexpr int kPtSamples = 200;

double sech(double x) { return 1.0 / std::cosh(x); }

Complex osc_z(const OscillatorParams& o, double x) { return {x, -o.c}; }

// Constant numerator of the oscillator's 1/z term.
double osc_shift(const OscillatorParams& o) { return 0.5 - o.kappa * o.a_osc; }

// Index of the left node of the 4-point stencil around x.
std::size_t stencil_start(const SampledTable& t, double x) {
  const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t k = (it == t.x.begin()) ? 0 : static_cast<std::size_t>(it - t.x.begin()) - 1;
  const std::size_t last = t.x.size() - 4;
  return std::min(k >= 1 ? k - 1 : 0, last);
}

void check_in_table(const SampledTable& t, double x) {
  const double tol = 1e-12 * std::max(1.0, std::fabs(t.x.back() - t.x.front()));
  if (x < t.x.front() - tol || x > t.x.back() + tol) {
    throw ArgumentError("sampled superpotential evaluated outside its table");
  }
}

// Cubic Lagrange interpolation through four neighbouring samples.
Complex table_value(const SampledTable& t, double x) {
  check_in_table(t, x);
  const std::size_t k = stencil_start(t, x);
  Complex sum = 0.0;
  for (std::size_t a = k; a < k + 4; ++a) {
    double basis = 1.0;
    for (std::size_t b = k; b < k + 4; ++b) {
      if (b != a) basis *= (x - t.x[b]) / (t.x[a] - t.x[b]);
    }
    sum += basis * t.w[a];
  }
  return sum;
}

// Exact derivative of the interpolating cubic.
Complex table_derivative(const SampledTable& t, double x) {
  check_in_table(t, x);
  const std::size_t k = stencil_start(t, x);
  Complex sum = 0.0;
  for (std::size_t a = k; a < k + 4; ++a) {
    double denom = 1.0;
    for (std::size_t b = k; b < k + 4; ++b) {
      if (b != a) denom *= t.x[a] - t.x[b];
    }
    double numer = 0.0;
    for (std::size_t skip = k; skip < k + 4; ++skip) {
      if (skip == a) continue;
      double prod = 1.0;
      for (std::size_t b = k; b < k + 4; ++b) {
        if (b != a && b != skip) prod *= x - t.x[b];
      }
      numer += prod;
    }
    sum += (numer / denom) * t.w[a];
  }
  return sum;
}

void require_sector_index(int i) {
  if (i != 1 && i != 2) {
    throw ArgumentError("sector index must be 1 or 2");
  }
}

}  // namespace

ModelSpec ModelSpec::scarf2(double p, double q, double mass) {
  if (!std::isfinite(p) || !std::isfinite(q) || !(p + q > 0.0)) {
    throw ArgumentError("scarf2: requires finite p, q with p + q > 0");
  }
  if (!(mass >= 0.0)) throw ArgumentError("mass must be >= 0");
  return ModelSpec{ModelKind::ScarfII, Sector::Pseudoscalar, mass,
                   ScarfParams{p, q}};
}

ModelSpec ModelSpec::pt_oscillator(double a_osc, int kappa, double c,
                                   double mass) {
  if (!(a_osc > 0.0) || !std::isfinite(a_osc)) {
    throw ArgumentError("pt_oscillator: a_osc must be > 0");
  }
  if (kappa != 1 && kappa != -1) {
    throw ArgumentError("pt_oscillator: kappa must be +1 or -1");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ArgumentError("pt_oscillator: contour shift c must be > 0");
  }
  if (!(mass >= 0.0)) throw ArgumentError("mass must be >= 0");
  return ModelSpec{ModelKind::PTOscillator, Sector::Pseudoscalar, mass,
                   OscillatorParams{a_osc, kappa, c}};
}

ModelSpec ModelSpec::scalar_tanh(double lambda, double a_shift, double mass) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(a_shift)) {
    throw ArgumentError("scalar_tanh: requires lambda > 0 and finite a");
  }
  if (!(mass >= 0.0)) throw ArgumentError("mass must be >= 0");
  return ModelSpec{ModelKind::ScalarTanh, Sector::Scalar, mass,
                   ScalarTanhParams{lambda, a_shift}};
}

ModelSpec ModelSpec::custom_sampled(std::vector<double> x, CVector w,
                                    Sector sector, double mass) {
  if (x.size() != w.size() || x.size() < 4) {
    throw ArgumentError("custom_sampled: need >= 4 samples with matching sizes");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(w[k].real()) ||
        !std::isfinite(w[k].imag())) {
      throw ArgumentError("custom_sampled: non-finite sample");
    }
    if (k > 0 && !(x[k] > x[k - 1])) {
      throw ArgumentError("custom_sampled: abscissae must increase strictly");
    }
  }
  if (!(x.front() < 0.0 && x.back() > 0.0)) {
    throw ArgumentError("custom_sampled: table must straddle x = 0");
  }
  if (!(mass >= 0.0)) throw ArgumentError("mass must be >= 0");
  return ModelSpec{ModelKind::CustomSampled, sector, mass,
                   SampledTable{std::move(x), std::move(w)}};
}

const ScarfParams& ModelSpec::scarf() const {
  return std::get<ScarfParams>(params);
}
const OscillatorParams& ModelSpec::oscillator() const {
  return std::get<OscillatorParams>(params);
}
const ScalarTanhParams& ModelSpec::scalar_tanh_params() const {
  return std::get<ScalarTanhParams>(params);
}
const SampledTable& ModelSpec::table() const {
  return std::get<SampledTable>(params);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ScarfII: return "scarf2";
    case ModelKind::PTOscillator: return "ptosc";
    case ModelKind::ScalarTanh: return "scalartanh";
    case ModelKind::CustomSampled: return "custom";
  }
  return "unknown";
}

std::string to_string(Sector sector) {
  return sector == Sector::Pseudoscalar ? "pseudoscalar" : "scalar";
}

Complex superpotential_value(const ModelSpec& model, double x) {
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const auto& s = model.scarf();
      return Complex((s.p + s.q) * std::tanh(x), -(s.p - s.q) * sech(x));
    }
    case ModelKind::PTOscillator: {
      const auto& o = model.oscillator();
      const Complex z = osc_z(o, x);
      return -z + osc_shift(o) / z;
    }
    case ModelKind::ScalarTanh: {
      const auto& s = model.scalar_tanh_params();
      return Complex(s.lambda * std::tanh(x), s.a_shift);
    }
    case ModelKind::CustomSampled:
      return table_value(model.table(), x);
  }
  return 0.0;
}

Complex superpotential_derivative(const ModelSpec& model, double x,
                                  DerivativePolicy policy) {
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const auto& s = model.scarf();
      const double se = sech(x);
      return Complex((s.p + s.q) * se * se, (s.p - s.q) * se * std::tanh(x));
    }
    case ModelKind::PTOscillator: {
      const auto& o = model.oscillator();
      const Complex z = osc_z(o, x);
      return -1.0 - osc_shift(o) / (z * z);
    }
    case ModelKind::ScalarTanh: {
      const double se = sech(x);
      return model.scalar_tanh_params().lambda * se * se;
    }
    case ModelKind::CustomSampled:
      if (policy != DerivativePolicy::FiniteDifference) {
        throw DerivativeUnavailable(
            "sampled superpotential has no analytic derivative; request the "
            "finite-difference policy");
      }
      return table_derivative(model.table(), x);
  }
  return 0.0;
}

Complex interaction_value(const ModelSpec& model, double x) {
  const Complex w = superpotential_value(model, x);
  return model.sector == Sector::Pseudoscalar ? w : w - model.mass;
}

Complex factor_superpotential(const ModelSpec& model, double x) {
  const Complex w = superpotential_value(model, x);
  return model.sector == Sector::Pseudoscalar ? w : -w;
}

Complex factor_superpotential_derivative(const ModelSpec& model, double x,
                                         DerivativePolicy policy) {
  const Complex d = superpotential_derivative(model, x, policy);
  return model.sector == Sector::Pseudoscalar ? d : -d;
}

Complex partner_potential(const ModelSpec& model, int i, double x,
                          DerivativePolicy policy) {
  require_sector_index(i);
  const double sgn = (i == 1) ? 1.0 : -1.0;
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const auto& s = model.scarf();
      const double sum = s.p + s.q;
      const double diff = s.p - s.q;
      const double se = sech(x);
      const double th = std::tanh(x);
      const double a = 2.0 * (s.p * s.p + s.q * s.q) - sgn * sum;
      const double b = 2.0 * sum - sgn;
      return Complex(-a * se * se + sum * sum, -diff * b * se * th);
    }
    case ModelKind::PTOscillator: {
      const auto& o = model.oscillator();
      const Complex z = osc_z(o, x);
      const Complex z2 = z * z;
      const double ka = o.kappa * o.a_osc;
      if (i == 1) {
        return z2 + (o.a_osc * o.a_osc - 0.25) / z2 + 2.0 * ka - 2.0;
      }
      return z2 + (o.a_osc * o.a_osc - 2.0 * ka + 0.75) / z2 + 2.0 * ka;
    }
    case ModelKind::ScalarTanh:
    case ModelKind::CustomSampled: {
      const Complex w = factor_superpotential(model, x);
      return w * w + sgn * factor_superpotential_derivative(model, x, policy);
    }
  }
  return 0.0;
}

double default_x_max(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ScarfII:
    case ModelKind::ScalarTanh:
      return 12.0;
    case ModelKind::PTOscillator:
      return 8.0;
    case ModelKind::CustomSampled: {
      const auto& t = model.table();
      return std::min(-t.x.front(), t.x.back());
    }
  }
  return 12.0;
}

namespace {

// Symmetric sample points x_k = -X + 2X k/(N-1), mirrored so that the
// negative half is the exact negation of the positive half.
std::vector<double> pt_sample(const ModelSpec& model) {
  const double X = default_x_max(model);
  std::vector<double> xs(kPtSamples);
  for (int k = 0; k < kPtSamples / 2; ++k) {
    const double x = X * (1.0 - 2.0 * k / (kPtSamples - 1.0));
    xs[k] = -x;
    xs[kPtSamples - 1 - k] = x;
  }
  return xs;
}

}  // namespace

double pt_residual_potential(const ModelSpec& model, PtCondition condition) {
  if (condition == PtCondition::SectorDefault) {
    condition = model.sector == Sector::Pseudoscalar ? PtCondition::Pseudoscalar
                                                     : PtCondition::Scalar;
  }
  const double sgn = condition == PtCondition::Pseudoscalar ? 1.0 : -1.0;
  double worst = 0.0;
  for (double x : pt_sample(model)) {
    const Complex r =
        std::conj(interaction_value(model, -x)) + sgn * interaction_value(model, x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double pt_residual_partner(const ModelSpec& model, int i,
                           DerivativePolicy policy) {
  require_sector_index(i);
  double worst = 0.0;
  for (double x : pt_sample(model)) {
    const Complex r = std::conj(partner_potential(model, i, -x, policy)) -
                      partner_potential(model, i, x, policy);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::optional<int> zero_mode_sector(const ModelSpec& model) {
  const double X = default_x_max(model);
  const double right = factor_superpotential(model, X).real();
  const double left = factor_superpotential(model, -X).real();
  if (right < 0.0 && left > 0.0) return 1;
  if (right > 0.0 && left < 0.0) return 2;
  return std::nullopt;
}

std::optional<int> bound_state_count(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const double s = model.scarf().p + model.scarf().q;
      return static_cast<int>(std::ceil(s - 1e-12));
    }
    case ModelKind::PTOscillator:
      return std::nullopt;
    default:
      throw NotAvailable("no closed-form spectrum for " + to_string(model.kind));
  }
}

std::vector<double> analytic_levels(const ModelSpec& model, int i,
                                    std::size_t max_count) {
  require_sector_index(i);
  if (model.kind != ModelKind::ScarfII && model.kind != ModelKind::PTOscillator) {
    throw NotAvailable("no closed-form spectrum for " + to_string(model.kind));
  }
  const auto zs = zero_mode_sector(model);
  const int first = (zs && *zs == i) ? 0 : 1;
  std::vector<double> out;
  if (model.kind == ModelKind::ScarfII) {
    const double s = model.scarf().p + model.scarf().q;
    for (int n = first; n < s && out.size() < max_count; ++n) {
      out.push_back(2.0 * s * n - static_cast<double>(n) * n);
    }
  } else {
    for (int n = first; out.size() < max_count; ++n) {
      out.push_back(4.0 * n);
    }
  }
  return out;
}

std::vector<double> energy_map(const ModelSpec& model, double eps) {
  const double e2 =
      model.sector == Sector::Pseudoscalar ? model.mass * model.mass + eps : eps;
  const double e = std::sqrt(std::max(e2, 0.0));
  return {e, -e};
}

DiracLevels dirac_levels(const ModelSpec& model, std::size_t max_count) {
  const auto zs = zero_mode_sector(model);
  const int sector = zs.value_or(1);
  const auto eps = analytic_levels(model, sector, max_count + 1);
  // With a zero mode in sector 1 the unpaired state is (phi, 0), E = +m;
  // in sector 2 it is (0, phi), E = -m. The scalar sector follows the
  // same bookkeeping with E² = ε.
  const bool ground_positive = !zs || *zs == 1;
  DiracLevels out;
  for (std::size_t n = 0; n < eps.size(); ++n) {
    const auto pm = energy_map(model, eps[n]);
    const bool is_ground = zs && n == 0;
    if ((!is_ground || ground_positive) && out.positive.size() < max_count) {
      out.positive.push_back(pm[0]);
    }
    if ((!is_ground || !ground_positive) && out.negative.size() < max_count) {
      out.negative.push_back(pm[1]);
    }
  }
  return out;
}

Complex analytic_eigenfunction(const ModelSpec& model, int n, double x) {
  if (n < 0) throw RangeError("analytic_eigenfunction: negative level index");
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const auto& s = model.scarf();
      if (!(n < s.p + s.q)) {
        throw RangeError("analytic_eigenfunction: n >= p + q is not bound");
      }
      const double a0 = 0.5 - 2.0 * s.p;
      // Gamma(n + a0) / Gamma(a0) is the rising factorial; evaluate it as a
      // product when a0 sits on a pole so that the finite limit is used.
      double ratio;
      if (a0 <= 0.0 && std::fabs(a0 - std::round(a0)) <= 1e-12) {
        ratio = pochhammer(a0, n);
      } else {
        ratio = gamma_real(n + a0) / gamma_real(a0);
      }
      double nfact = 1.0;
      for (int k = 2; k <= n; ++k) nfact *= k;
      const double sh = std::sinh(x);
      const Complex z(0.5, -0.5 * sh);
      const Complex pre = principal_power(z, -s.p) * principal_power(std::conj(z), -s.q);
      const Complex jac =
          jacobi_poly(n, -2.0 * s.p - 0.5, -2.0 * s.q - 0.5, Complex(0.0, sh));
      return (ratio / nfact) * pre * jac;
    }
    case ModelKind::PTOscillator: {
      const auto& o = model.oscillator();
      const Complex z = osc_z(o, x);
      const double ka = o.kappa * o.a_osc;
      return std::exp(-0.5 * z * z) * principal_power(z, 0.5 - ka) *
             laguerre_assoc(n, -ka, z * z);
    }
    default:
      throw NotAvailable("no closed-form eigenfunctions for " +
                         to_string(model.kind));
  }
}

std::optional<double> continuum_threshold(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ScarfII: {
      const double s = model.scarf().p + model.scarf().q;
      return s * s;
    }
    case ModelKind::PTOscillator:
      return std::nullopt;
    case ModelKind::ScalarTanh: {
      const auto& s = model.scalar_tanh_params();
      return s.lambda * s.lambda - s.a_shift * s.a_shift;
    }
    case ModelKind::CustomSampled: {
      const auto& t = model.table();
      const double lo = (t.w.front() * t.w.front()).real();
      const double hi = (t.w.back() * t.w.back()).real();
      return std::min(lo, hi);
    }
  }
  return std::nullopt;
}

std::vector<double> companion_levels(const ModelSpec& model,
                                     std::size_t max_count) {
  std::vector<double> out;
  if (model.kind != ModelKind::PTOscillator) return out;
  const auto& o = model.oscillator();
  for (std::size_t n = 0; n < max_count; ++n) {
    out.push_back(4.0 * static_cast<double>(n) + 4.0 * o.kappa * o.a_osc);
  }
  return out;
}

}  // namespace psusy
