#include "pseudosusy/pseudosusy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pseudosusy/errors.hpp"

namespace psusy {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kDirectHermTol = 1e-10;
constexpr double kPtFlagTol = 1e-8;
constexpr double kAnnihilateTol = 1e-6;
constexpr double kDivergeTol = 1e-8;
constexpr double kMapResidualTol = 1e-8;
constexpr double kMapEigenTol = 1e-9;
constexpr double kIsoGapTol = 1e-9;
constexpr double kRealityTol = 1e-6;
constexpr double kRelationTol = 1e-6;
constexpr double kAlignTol = 1e-4;
constexpr double kSignPresentTol = 1e-3;
constexpr double kSignAbsentGap = 0.3;
constexpr double kBoxWeightTol = 1e-3;
constexpr double kBoxFraction = 0.9;

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Dense representation of a 2x2 block operator on lattice1 (+) lattice2.
DenseMatrix blocks(std::size_t n1, std::size_t n2, const DenseMatrix* a11,
                   const DenseMatrix* a12, const DenseMatrix* a21,
                   const DenseMatrix* a22) {
  DenseMatrix out(n1 + n2, n1 + n2);
  if (a11) out.set_block(0, 0, *a11);
  if (a12) out.set_block(0, n1, *a12);
  if (a21) out.set_block(n1, 0, *a21);
  if (a22) out.set_block(n1, n1, *a22);
  return out;
}

// Fraction of |v|² carried by lattice points with |x| > 0.9 x_max.
double boundary_weight(const CVector& v, const std::vector<double>& xs,
                       double x_max) {
  double edge = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double w = std::norm(v[k]);
    total += w;
    if (std::fabs(xs[k]) > kBoxFraction * x_max) edge += w;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace

CheckRecord make_record(std::string name, double residual, double tolerance,
                        Construction mode, std::string notes) {
  CheckRecord r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.mode = mode;
  r.notes = std::move(notes);
  return r;
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

IntertwiningResiduals check_intertwining(const ModelSpec& model, const Grid& grid,
                                         Construction mode,
                                         DerivativePolicy policy) {
  const auto ops = first_order_ops(model, grid);
  IntertwiningResiduals out;
  if (mode == Construction::Factored) {
    const BandMatrix h1 = ops.L * ops.M;
    const BandMatrix h2 = ops.M * ops.L;
    out.r1 = rel((h2 * ops.M - ops.M * h1).frobenius_norm(), ops.M.frobenius_norm());
    out.r2 = rel((ops.L * h2 - h1 * ops.L).frobenius_norm(), ops.L.frobenius_norm());
    return out;
  }
  const BandMatrix h1 = schrodinger_matrix(model, grid, 1, Construction::Direct, policy);
  const BandMatrix h2 = schrodinger_matrix(model, grid, 2, Construction::Direct, policy);
  const BandMatrix d1 = h2 * ops.M - ops.M * h1;
  const BandMatrix d2 = ops.L * h2 - h1 * ops.L;
  for (double w : probe_widths(grid)) {
    const CVector f1 = gaussian_probe(grid, ops.layout.upper, w);
    const CVector f2 = gaussian_probe(grid, ops.layout.lower, w);
    out.r1 = std::max(out.r1, norm2(d1.apply(f1)) / norm2(f1));
    out.r2 = std::max(out.r2, norm2(d2.apply(f2)) / norm2(f2));
  }
  return out;
}

PseudoAdjointResult check_pseudo_adjoint(const ModelSpec& model, const Grid& grid) {
  const auto ops = first_order_ops(model, grid);
  PseudoAdjointResult out;
  const BandMatrix conj_l = ops.L.adjoint().reversed();
  out.residual = rel((ops.M + conj_l).frobenius_norm(), ops.M.frobenius_norm());
  out.pt_residual = pt_residual_potential(model, PtCondition::Pseudoscalar);
  out.pt_violation = out.pt_residual > kPtFlagTol;
  return out;
}

double check_pseudo_hermiticity(const ModelSpec& model, const Grid& grid, int i,
                                Construction mode, DerivativePolicy policy) {
  const BandMatrix h = schrodinger_matrix(model, grid, i, mode, policy);
  return rel((h.adjoint().reversed() - h).frobenius_norm(), h.frobenius_norm());
}

std::vector<CheckRecord> supercharge_algebra(const ModelSpec& model,
                                             const Grid& grid) {
  const auto ops = first_order_ops(model, grid);
  const std::size_t n1 = ops.L.rows();
  const std::size_t n2 = ops.M.rows();
  const DenseMatrix l = ops.L.to_dense();
  const DenseMatrix m = ops.M.to_dense();
  const DenseMatrix lm = (ops.L * ops.M).to_dense();
  const DenseMatrix ml = (ops.M * ops.L).to_dense();

  const DenseMatrix q = blocks(n1, n2, nullptr, &l, nullptr, nullptr);
  const DenseMatrix qs = blocks(n1, n2, nullptr, nullptr, &m, nullptr);
  const DenseMatrix k = q * qs + qs * q;
  const DenseMatrix diag = blocks(n1, n2, &lm, nullptr, nullptr, &ml);
  const double nq = q.frobenius_norm();
  const double nqs = qs.frobenius_norm();
  const double nk = k.frobenius_norm();

  std::vector<CheckRecord> out;
  const auto F = Construction::Factored;
  out.push_back(make_record("algebra_Q_squared", rel((q * q).frobenius_norm(), nq * nq),
                            kExactTol, F, "Q² = 0"));
  out.push_back(make_record("algebra_Qsharp_squared",
                            rel((qs * qs).frobenius_norm(), nqs * nqs), kExactTol, F,
                            "Q#² = 0"));
  out.push_back(make_record("algebra_anticommutator",
                            rel((k - diag).frobenius_norm(), diag.frobenius_norm()),
                            kExactTol, F, "{Q, Q#} = diag(LM, ML)"));
  out.push_back(make_record("algebra_commutator_Q",
                            rel((q * k - k * q).frobenius_norm(), nq * nk), kExactTol, F,
                            "[Q, {Q, Q#}] = 0"));
  out.push_back(make_record("algebra_commutator_Qsharp",
                            rel((qs * k - k * qs).frobenius_norm(), nqs * nk),
                            kExactTol, F, "[Q#, {Q, Q#}] = 0"));

  // Parity on the doubled space acts lattice-wise.
  DenseMatrix eta(n1 + n2, n1 + n2);
  for (std::size_t a = 0; a < n1; ++a) eta(a, n1 - 1 - a) = 1.0;
  for (std::size_t a = 0; a < n2; ++a) eta(n1 + a, n1 + n2 - 1 - a) = 1.0;
  const DenseMatrix pq = eta * q.adjoint() * eta;
  out.push_back(make_record("algebra_pseudo_adjoint_Q",
                            rel((pq + qs).frobenius_norm(), nqs), kExactTol, F,
                            "eta^-1 Q^dagger eta = -Q# (signed form)"));

  if (model.sector == Sector::Pseudoscalar) {
    const DenseMatrix d = dirac_matrix(model, grid);
    const DenseMatrix d2 = d * d;
    const double m2 = model.mass * model.mass;
    const DenseMatrix rhs = k + DenseMatrix::identity(n1 + n2).scaled(m2);
    out.push_back(make_record("algebra_dirac_square",
                              rel((d2 - rhs).frobenius_norm(), d2.frobenius_norm()),
                              kExactTol, F, "D² = {Q, Q#} + m² I"));
  }
  return out;
}

double physical_window(const ModelSpec& model, const Grid& grid) {
  if (const auto t = continuum_threshold(model)) return *t;
  return 0.5 * grid.x_max * grid.x_max;
}

SectorSpectra sector_spectra(const ModelSpec& model, const Grid& grid,
                             const VerifyOptions& options, Construction mode) {
  SectorSpectra out;
  out.window = physical_window(model, grid);
  const Grid fine = grid.refined();
  EigenOptions eo;
  eo.tol_eig = options.tol_eig;
  const double window = out.window;
  const auto in_window = [window](Complex z) { return z.real() < window + 1.0; };
  for (int s = 0; s < 2; ++s) {
    const int i = s + 1;
    out.coarse[s] = eigen_dense_selected(
        schrodinger_matrix(model, grid, i, mode, options.policy), in_window, eo);
    out.fine[s] = eigen_dense(schrodinger_matrix(model, fine, i, mode, options.policy),
                              false, eo);
    out.physical[s] = filter_physical(out.coarse[s], out.fine[s], options.tol_match,
                                      window);
    out.physical_coarse[s] = filter_physical(out.fine[s], out.coarse[s],
                                             options.tol_match, window);
  }
  return out;
}

IsospectralityResult isospectrality_check(const ModelSpec& model, const Grid& grid,
                                          const VerifyOptions& options) {
  return isospectrality_check(model, grid, sector_spectra(model, grid, options));
}

IsospectralityResult isospectrality_check(const ModelSpec& model, const Grid& grid,
                                          const SectorSpectra& spectra) {
  IsospectralityResult out;
  out.match = match_spectra(spectra.physical[0], spectra.physical[1], true);
  for (const auto& p : out.match.matched) out.max_gap = std::max(out.max_gap, p.gap);
  out.zero_mode_sector = zero_mode_sector(model);

  // Zero modes are classified on the coarse grid, where vectors exist. An
  // exact zero mode with weight against the walls is the lattice index
  // state of a non-normalizable kernel, not a bound state.
  const auto layout = layout_for(model);
  for (int s = 0; s < 2; ++s) {
    const auto& xs = grid.points(layout.of_sector(s + 1));
    for (const auto& p : spectra.physical_coarse[s].pairs) {
      if (!is_zero_mode(p.value, spectra.physical_coarse[s].matrix_norm)) continue;
      if (!p.vector.empty() && boundary_weight(p.vector, xs, grid.x_max) > kBoxWeightTol) {
        ++out.box_modes[s];
      } else {
        ++out.zero_modes[s];
      }
    }
  }
  const auto zs = out.zero_mode_sector;
  const std::size_t want1 = (zs && *zs == 1) ? 1 : 0;
  const std::size_t want2 = (zs && *zs == 2) ? 1 : 0;
  out.zero_mode_count_ok = out.zero_modes[0] == want1 && out.zero_modes[1] == want2;

  out.min_real = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 2; ++s) {
    for (const auto& p : spectra.physical[s].pairs) {
      out.max_imag = std::max(out.max_imag,
                              std::fabs(p.value.imag()) / (1.0 + std::fabs(p.value.real())));
      out.min_real = std::min(out.min_real, p.value.real());
    }
  }
  if (!std::isfinite(out.min_real)) out.min_real = 0.0;

  const std::size_t unmatched = out.match.unmatched_a.size() + out.match.unmatched_b.size();
  const auto F = Construction::Factored;
  out.records.push_back(make_record(
      "isospectral_gap", unmatched > 0 ? std::numeric_limits<double>::infinity() : out.max_gap,
      kIsoGapTol, F,
      std::to_string(out.match.matched.size()) + " nonzero pairs matched, " +
          std::to_string(unmatched) + " unmatched"));
  std::string notes = "normalizable zero modes H1=" + std::to_string(out.zero_modes[0]) +
                      " H2=" + std::to_string(out.zero_modes[1]) + ", expected " +
                      std::to_string(want1) + "/" + std::to_string(want2);
  if (out.box_modes[0] + out.box_modes[1] > 0) {
    notes += "; box modes H1=" + std::to_string(out.box_modes[0]) +
             " H2=" + std::to_string(out.box_modes[1]);
  }
  out.records.push_back(make_record("isospectral_zero_modes",
                                    out.zero_mode_count_ok ? 0.0 : 1.0, 0.0, F, notes));
  out.records.push_back(make_record("reality", out.max_imag, kRealityTol, F,
                                    "max |im| / (1 + |re|) over physical levels"));
  out.records.push_back(make_record("nonnegativity", std::max(0.0, -out.min_real),
                                    kRealityTol, F, "min re over physical levels"));
  return out;
}

MapOutcome map_eigenfunction(const ModelSpec& model, const Grid& grid,
                             const EigenPair& pair, int sign) {
  if (sign != 1 && sign != -1) throw ArgumentError("map_eigenfunction: sign must be +1 or -1");
  const auto ops = first_order_ops(model, grid);
  if (pair.vector.size() != ops.M.cols()) {
    throw ArgumentError("map_eigenfunction: vector does not live on the sector-1 lattice");
  }
  MapOutcome out;
  const Complex eps = pair.value;
  out.energy = static_cast<double>(sign) * std::sqrt(model.mass * model.mass + eps);
  const Complex denom = out.energy + model.mass;
  if (std::abs(denom) < kDivergeTol) {
    throw DivergentMap("map_eigenfunction: |E + m| below 1e-8");
  }
  const CVector mv = ops.M.apply(pair.vector);
  const double nv1 = norm2(pair.vector);
  out.annihilation_ratio = rel(norm2(mv), nv1);
  if (out.annihilation_ratio <= kAnnihilateTol) {
    out.kind = MapOutcome::Kind::GroundStateAnnihilated;
    return out;
  }
  CVector v2 = scaled(mv, Complex(0.0, 1.0) / denom);
  out.mapped_norm = norm2(v2);
  const BandMatrix h2 = ops.M * ops.L;
  const CVector hv = h2.apply(v2);
  CVector r(hv.size());
  for (std::size_t k = 0; k < hv.size(); ++k) r[k] = hv[k] - eps * v2[k];
  const Complex rayleigh = dot(v2, hv) / dot(v2, v2);
  out.eigenvalue_gap = std::abs(rayleigh - eps);
  out.pair.value = eps;
  out.pair.residual = norm2(r) / (h2.frobenius_norm() * out.mapped_norm);
  out.pair.converged = out.pair.residual <= kMapResidualTol;
  out.pair.vector = scaled(v2, 1.0 / out.mapped_norm);
  return out;
}

double partner_annihilation_ratio(const ModelSpec& model, const Grid& grid,
                                  const CVector& v2) {
  const auto ops = first_order_ops(model, grid);
  if (v2.size() != ops.L.cols()) {
    throw ArgumentError("partner_annihilation_ratio: vector does not live on the sector-2 lattice");
  }
  return rel(norm2(ops.L.apply(v2)), norm2(v2));
}

Spectrum dirac_eigenvalues(const ModelSpec& model, const Grid& grid,
                           const VerifyOptions& options) {
  EigenOptions eo;
  eo.tol_eig = options.tol_eig;
  return eigen_dense(dirac_band(model, grid).matrix, false, eo);
}

DiracCheckResult dirac_spectrum_check(const ModelSpec& model, const Grid& grid,
                                      const VerifyOptions& options) {
  return dirac_spectrum_check(model, grid, sector_spectra(model, grid, options), options);
}

DiracCheckResult dirac_spectrum_check(const ModelSpec& model, const Grid& grid,
                                      const SectorSpectra& spectra,
                                      const VerifyOptions& options) {
  if (model.sector != Sector::Pseudoscalar) {
    throw ArgumentError("dirac_spectrum_check: pseudoscalar sector only");
  }
  DiracCheckResult out;
  out.zero_mode_sector = zero_mode_sector(model);
  const double m = model.mass;
  const Spectrum coarse = dirac_eigenvalues(model, grid, options);

  // Refined-grid Dirac spectrum from the smaller block.
  const bool first_smaller = spectra.fine[0].dimension < spectra.fine[1].dimension;
  const Spectrum& small = spectra.fine[first_smaller ? 0 : 1];
  Spectrum fine;
  fine.dimension = spectra.fine[0].dimension + spectra.fine[1].dimension;
  fine.matrix_norm = coarse.matrix_norm;
  for (const auto& p : small.pairs) {
    const Complex e = std::sqrt(m * m + p.value);
    fine.pairs.push_back({e, {}, 0.0, true});
    fine.pairs.push_back({-e, {}, 0.0, true});
  }
  fine.pairs.push_back({Complex(first_smaller ? -m : m), {}, 0.0, true});
  sort_spectrum(fine);
  out.fine_levels = fine.values();

  const Spectrum confirmed = filter_physical(fine, coarse, options.tol_match);
  for (const auto& p : confirmed.pairs) {
    const Complex e = p.value;
    if ((e * e).real() - m * m < spectra.window) out.levels.push_back(e);
  }

  for (const auto& e : out.levels) {
    const Complex target = e * e - m * m;
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 2; ++s) {
      for (const auto& p : spectra.coarse[s].pairs) {
        best = std::min(best, std::abs(target - p.value));
      }
    }
    out.max_relation_gap = std::max(out.max_relation_gap, best / (1.0 + std::abs(e * e)));
    out.max_imag = std::max(out.max_imag, std::fabs(e.imag()) / (1.0 + std::fabs(e.real())));
  }
  double near_plus = std::numeric_limits<double>::infinity();
  double near_minus = std::numeric_limits<double>::infinity();
  for (const auto& e : out.levels) {
    near_plus = std::min(near_plus, std::abs(e - m));
    near_minus = std::min(near_minus, std::abs(e + m));
  }
  out.plus_m_present = near_plus <= kSignPresentTol * (1.0 + m);
  out.minus_m_present = near_minus <= kSignPresentTol * (1.0 + m);

  const auto F = Construction::Factored;
  out.records.push_back(make_record("dirac_relation", out.max_relation_gap, kRelationTol, F,
                                    "E² - m² against H1/H2 eigenvalues on the same grid"));
  out.records.push_back(make_record("dirac_reality", out.max_imag, kRealityTol, F,
                                    std::to_string(out.levels.size()) + " confirmed levels"));
  if (m < 0.5 * kSignAbsentGap) {
    out.records.push_back(make_record("dirac_ground_sign", 0.0, 0.0, F,
                                      "mass too small to separate +m from -m"));
  } else if (out.zero_mode_sector) {
    const bool want_plus = *out.zero_mode_sector == 1;
    const bool present = want_plus ? out.plus_m_present : out.minus_m_present;
    const double other = want_plus ? near_minus : near_plus;
    const bool ok = present && other > kSignAbsentGap;
    out.records.push_back(make_record(
        "dirac_ground_sign", ok ? 0.0 : 1.0, 0.0, F,
        std::string("zero mode in sector ") + std::to_string(*out.zero_mode_sector) +
            ": expect " + (want_plus ? "+m" : "-m") + " present, " +
            (want_plus ? "-m" : "+m") + " absent (nearest " + fmt(other) + ")"));
  } else {
    const bool ok = near_plus > kSignAbsentGap && near_minus > kSignAbsentGap;
    out.records.push_back(make_record("dirac_ground_sign", ok ? 0.0 : 1.0, 0.0, F,
                                      "no normalizable zero mode: expect neither +m nor -m"));
  }
  return out;
}

AlignmentResult analytic_vs_numeric(const ModelSpec& model, const Grid& grid, int n,
                                    const VerifyOptions& options) {
  const auto zs = zero_mode_sector(model);
  if (!zs) throw NotAvailable("analytic_vs_numeric: model has no zero-mode sector");
  if (n < 0) throw RangeError("analytic_vs_numeric: negative level index");
  const auto levels = analytic_levels(model, *zs, static_cast<std::size_t>(n) + 1);
  if (static_cast<std::size_t>(n) >= levels.size()) {
    throw RangeError("analytic_vs_numeric: level outside the bound range");
  }
  AlignmentResult out;
  out.sector = *zs;
  out.analytic_level = levels[static_cast<std::size_t>(n)];
  const double level = out.analytic_level;
  EigenOptions eo;
  eo.tol_eig = options.tol_eig;
  const Spectrum s = eigen_dense_selected(
      schrodinger_matrix(model, grid, *zs, Construction::Factored),
      [level](Complex z) { return std::abs(z - level) < 0.5; }, eo);
  const EigenPair* best = nullptr;
  for (const auto& p : s.pairs) {
    if (p.vector.empty()) continue;
    if (!best || std::abs(p.value - level) < std::abs(best->value - level)) best = &p;
  }
  if (!best) throw RangeError("analytic_vs_numeric: no numeric level near the closed form");
  out.numeric_level = best->value;
  const auto& xs = grid.points(layout_for(model).of_sector(*zs));
  CVector u(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) u[k] = analytic_eigenfunction(model, n, xs[k]);
  out.defect = 1.0 - std::abs(dot(u, best->vector)) / (norm2(u) * norm2(best->vector));
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "pt", "intertwine", "pseudoadjoint", "pseudohermiticity",
      "algebra", "isospectral", "map", "analytic"};
  return names;
}

namespace {

void add_pt(VerificationReport& rep, const ModelSpec& model, const VerifyOptions& opt) {
  const auto F = Construction::Factored;
  const double rp = pt_residual_potential(model);
  rep.checks.push_back(make_record(
      "pt_potential", rp, kExactTol, F,
      model.sector == Sector::Pseudoscalar ? "conj V_p(-x) = -V_p(x)"
                                           : "conj V_s(-x) = V_s(x)"));
  for (int i = 1; i <= 2; ++i) {
    rep.checks.push_back(make_record("pt_partner_" + std::to_string(i),
                                     pt_residual_partner(model, i, opt.policy), kExactTol, F,
                                     "conj U_i(-x) = U_i(x)"));
  }
}

void add_intertwine(VerificationReport& rep, const ModelSpec& model, const Grid& grid,
                    Construction mode, const VerifyOptions& opt) {
  const auto r = check_intertwining(model, grid, Construction::Factored);
  rep.checks.push_back(make_record("intertwine_H2M_MH1", r.r1, kExactTol,
                                   Construction::Factored));
  rep.checks.push_back(make_record("intertwine_LH2_H1L", r.r2, kExactTol,
                                   Construction::Factored));
  if (mode == Construction::Direct) {
    const auto a = check_intertwining(model, grid, Construction::Direct, opt.policy);
    const auto b = check_intertwining(model, grid.refined(), Construction::Direct, opt.policy);
    const double ratio1 = a.r1 / b.r1;
    const double ratio2 = a.r2 / b.r2;
    rep.checks.push_back(make_record("intertwine_direct_order_1", std::fabs(ratio1 - 4.0), 0.5,
                                     Construction::Direct,
                                     "probe residual " + fmt(a.r1) + " -> " + fmt(b.r1) +
                                         " when halving h, ratio " + fmt(ratio1)));
    rep.checks.push_back(make_record("intertwine_direct_order_2", std::fabs(ratio2 - 4.0), 0.5,
                                     Construction::Direct,
                                     "probe residual " + fmt(a.r2) + " -> " + fmt(b.r2) +
                                         " when halving h, ratio " + fmt(ratio2)));
  }
}

void add_pseudoadjoint(VerificationReport& rep, const ModelSpec& model, const Grid& grid) {
  const auto r = check_pseudo_adjoint(model, grid);
  rep.checks.push_back(make_record(
      "pseudoadjoint", r.residual, kExactTol, Construction::Factored,
      r.pt_violation ? "PTViolation: pseudoscalar PT residual " + fmt(r.pt_residual)
                     : "M = -P L^dagger P"));
}

void add_pseudohermiticity(VerificationReport& rep, const ModelSpec& model,
                           const Grid& grid, Construction mode, const VerifyOptions& opt) {
  for (int i = 1; i <= 2; ++i) {
    rep.checks.push_back(make_record("pseudohermiticity_H" + std::to_string(i),
                                     check_pseudo_hermiticity(model, grid, i),
                                     kExactTol, Construction::Factored));
    if (mode == Construction::Direct) {
      rep.checks.push_back(make_record(
          "pseudohermiticity_direct_H" + std::to_string(i),
          check_pseudo_hermiticity(model, grid, i, Construction::Direct, opt.policy),
          kDirectHermTol, Construction::Direct));
    }
  }
}

void add_map(VerificationReport& rep, const ModelSpec& model, const Grid& grid,
             const SectorSpectra& spectra) {
  const auto F = Construction::Factored;
  double worst_res = 0.0;
  double worst_gap = 0.0;
  std::size_t mapped = 0;
  std::optional<double> ground_ratio;
  for (const auto& p : spectra.physical_coarse[0].pairs) {
    if (p.vector.empty()) continue;
    const auto o = map_eigenfunction(model, grid, p, +1);
    if (o.kind == MapOutcome::Kind::GroundStateAnnihilated) {
      ground_ratio = o.annihilation_ratio;
      continue;
    }
    ++mapped;
    worst_res = std::max(worst_res, o.pair.residual);
    worst_gap = std::max(worst_gap, o.eigenvalue_gap / (1.0 + std::abs(p.value)));
  }
  rep.checks.push_back(make_record("map_residual", worst_res, kMapResidualTol, F,
                                   std::to_string(mapped) + " H1 states mapped by M"));
  rep.checks.push_back(make_record("map_eigenvalue", worst_gap, kMapEigenTol, F,
                                   "Rayleigh quotient on H2 against the H1 eigenvalue"));
  const auto zs = zero_mode_sector(model);
  if (zs && *zs == 1) {
    rep.checks.push_back(make_record(
        "map_ground_state", ground_ratio.value_or(1.0), kAnnihilateTol, F,
        ground_ratio ? "H1 ground state annihilated by M" : "no annihilated H1 state found"));
  } else if (zs && *zs == 2) {
    std::optional<double> ratio;
    for (const auto& p : spectra.physical_coarse[1].pairs) {
      if (p.vector.empty() || !is_zero_mode(p.value, spectra.physical_coarse[1].matrix_norm)) {
        continue;
      }
      ratio = partner_annihilation_ratio(model, grid, p.vector);
    }
    rep.checks.push_back(make_record(
        "map_ground_state", ratio.value_or(1.0), kAnnihilateTol, F,
        "zero mode lives in H2; annihilated by L (||L v|| / ||v||)"));
  }
}

void add_analytic(VerificationReport& rep, const ModelSpec& model, const Grid& grid,
                  const VerifyOptions& opt) {
  const auto F = Construction::Factored;
  if (model.kind != ModelKind::ScarfII && model.kind != ModelKind::PTOscillator) {
    rep.checks.push_back(make_record("analytic", 0.0, 0.0, F,
                                     "not available: no closed-form eigenfunctions"));
    return;
  }
  const int count = model.kind == ModelKind::ScarfII ? bound_state_count(model).value() : 3;
  for (int n = 0; n < std::min(count, 3); ++n) {
    const auto a = analytic_vs_numeric(model, grid, n, opt);
    rep.checks.push_back(make_record(
        "analytic_n" + std::to_string(n), a.defect, kAlignTol, F,
        "sector " + std::to_string(a.sector) + ", level " + fmt(a.analytic_level) +
            " vs numeric " + fmt(a.numeric_level.real())));
  }
}

}  // namespace

VerificationReport run_verification(const ModelSpec& model, const Grid& grid,
                                    const std::vector<std::string>& checks,
                                    Construction mode, const VerifyOptions& options) {
  for (const auto& c : checks) {
    const auto& k = known_checks();
    if (std::find(k.begin(), k.end(), c) == k.end()) {
      throw ArgumentError("unknown check: " + c);
    }
  }
  VerificationReport rep;
  rep.model = model;
  rep.x_max = grid.x_max;
  rep.n_points = grid.n_points;
  std::optional<SectorSpectra> spectra;
  auto need_spectra = [&]() -> const SectorSpectra& {
    if (!spectra) spectra = sector_spectra(model, grid, options);
    return *spectra;
  };
  for (const auto& c : checks) {
    if (c == "pt") {
      add_pt(rep, model, options);
    } else if (c == "intertwine") {
      add_intertwine(rep, model, grid, mode, options);
    } else if (c == "pseudoadjoint") {
      add_pseudoadjoint(rep, model, grid);
    } else if (c == "pseudohermiticity") {
      add_pseudohermiticity(rep, model, grid, mode, options);
    } else if (c == "algebra") {
      for (auto& r : supercharge_algebra(model, grid)) rep.checks.push_back(std::move(r));
    } else if (c == "isospectral") {
      auto iso = isospectrality_check(model, grid, need_spectra());
      for (auto& r : iso.records) rep.checks.push_back(std::move(r));
    } else if (c == "map") {
      add_map(rep, model, grid, need_spectra());
    } else if (c == "analytic") {
      add_analytic(rep, model, grid, options);
    }
  }
  return rep;
}

}  // namespace psusy
