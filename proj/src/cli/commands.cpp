#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/log.hpp"
#include "cli/report.hpp"
#include "pseudosusy/errors.hpp"

namespace psusy::cli {

using nlohmann::json;

namespace {

constexpr double kTagTol = 1e-2;

struct Setup {
  ModelSpec model;
  Grid grid;
  Construction mode;
  VerifyOptions options;
};

Setup prepare(const RunConfig& cfg) {
  validate(cfg);
  Setup s{make_model(cfg), {}, make_mode(cfg), make_options(cfg)};
  s.grid = make_grid(cfg, s.model);
  log_info("model " + to_string(s.model.kind) + ", x_max " + format_real(s.grid.x_max) +
           ", n " + std::to_string(s.grid.n_points) + ", mode " + cfg.mode);
  return s;
}

std::optional<std::vector<double>> try_levels(const ModelSpec& model, int i,
                                              std::size_t count) {
  try {
    return analytic_levels(model, i, count);
  } catch (const NotAvailable&) {
    return std::nullopt;
  }
}

// Nearest reference value within kTagTol (1 + |ref|); -1 when none.
long nearest(const std::vector<double>& refs, Complex z, double& gap) {
  long best = -1;
  gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const double d = std::abs(z - refs[k]);
    if (d < gap) {
      gap = d;
      best = static_cast<long>(k);
    }
  }
  if (best >= 0 && gap > kTagTol * (1.0 + std::fabs(refs[static_cast<std::size_t>(best)]))) {
    return -1;
  }
  return best;
}

json level_entries(const Spectrum& s, const std::vector<double>& closed,
                   const std::vector<double>& companion) {
  json arr = json::array();
  for (const auto& p : s.pairs) {
    json e = complex_json(p.value);
    double gap = 0.0;
    const long k = nearest(closed, p.value, gap);
    if (k >= 0) {
      e["branch"] = "closed_form";
      e["analytic"] = closed[static_cast<std::size_t>(k)];
      e["gap"] = gap;
    } else if (nearest(companion, p.value, gap) >= 0) {
      e["branch"] = "companion";
      e["analytic"] = nullptr;
      e["gap"] = nullptr;
    } else {
      e["branch"] = "unassigned";
      e["analytic"] = nullptr;
      e["gap"] = nullptr;
    }
    arr.push_back(e);
  }
  return arr;
}

std::size_t analytic_count(const ModelSpec& model, double window) {
  // Enough closed-form levels to cover the physical window.
  if (model.kind == ModelKind::PTOscillator) {
    return static_cast<std::size_t>(std::max(1.0, window / 4.0 + 1.0));
  }
  return 64;
}

std::string spectrum_csv(const json& report) {
  std::string s = csv_row({"sector", "index", "re", "im", "branch", "analytic", "gap"});
  for (const char* key : {"sector1", "sector2", "dirac"}) {
    std::size_t idx = 0;
    for (const auto& e : report["spectra"][key]) {
      const auto opt = [&](const char* f) {
        return e.contains(f) && !e[f].is_null() ? format_real(e[f].get<double>())
                                                : std::string();
      };
      s += csv_row({key, std::to_string(idx++), format_real(e["re"].get<double>()),
                    format_real(e["im"].get<double>()),
                    e.contains("branch")   ? e["branch"].get<std::string>()
                    : e.contains("series") ? e["series"].get<std::string>()
                                           : "",
                    opt("analytic"), opt("gap")});
    }
  }
  return s;
}

std::string checks_csv(const json& report) {
  std::string s = csv_row({"name", "residual", "tolerance", "pass", "mode", "notes"});
  for (const auto& c : report["checks"]) {
    std::string notes = c["notes"].get<std::string>();
    std::replace(notes.begin(), notes.end(), ',', ';');
    s += csv_row({c["name"].get<std::string>(), format_real(c["residual"].get<double>()),
                  format_real(c["tolerance"].get<double>()), c["pass"].get<bool>() ? "1" : "0",
                  c["mode"].get<std::string>(), notes});
  }
  return s;
}

void emit(const RunConfig& cfg, const json& report, std::ostream& out,
          const std::function<std::string(const json&)>& csv) {
  const std::string body =
      cfg.format == OutputFormat::Json ? report.dump(2) + "\n" : csv(report);
  write_output(cfg.out, body, out);
}

json analytic_section(const ModelSpec& model, double window) {
  json a;
  const std::size_t count = analytic_count(model, window);
  const auto l1 = try_levels(model, 1, count);
  if (!l1) {
    a["available"] = false;
    a["note"] = "not available: no closed-form spectrum for this model";
    return a;
  }
  a["available"] = true;
  a["sector1"] = *l1;
  a["sector2"] = *try_levels(model, 2, count);
  const auto zs = zero_mode_sector(model);
  a["zero_mode_sector"] = zs ? json(*zs) : json(nullptr);
  if (model.kind == ModelKind::PTOscillator) {
    a["companion"] = companion_levels(model, count);
  }
  return a;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Setup s = prepare(cfg);
  const SectorSpectra sp = sector_spectra(s.model, s.grid, s.options, s.mode);
  json report = report_skeleton("spectrum", s.model, s.grid, cfg);
  report["analytic"] = analytic_section(s.model, sp.window);
  const std::size_t count = analytic_count(s.model, sp.window);
  const auto companion = companion_levels(s.model, count);
  for (int i = 1; i <= 2; ++i) {
    const auto closed = try_levels(s.model, i, count).value_or(std::vector<double>{});
    report["spectra"]["sector" + std::to_string(i)] =
        level_entries(sp.physical[i - 1], closed, companion);
  }
  report["window"] = sp.window;
  emit(cfg, report, out, spectrum_csv);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Setup s = prepare(cfg);
  const VerificationReport rep = run_verification(s.model, s.grid, cfg.checks, s.mode, s.options);
  json report = report_skeleton("verify", s.model, s.grid, cfg);
  for (const auto& c : rep.checks) {
    report["checks"].push_back(check_json(c));
    log_debug(c.name + (c.pass ? " pass " : " FAIL ") + format_real(c.residual));
  }
  report["all_pass"] = rep.all_pass();
  emit(cfg, report, out, checks_csv);
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_dirac(const RunConfig& cfg, std::ostream& out) {
  const Setup s = prepare(cfg);
  if (s.model.sector != Sector::Pseudoscalar) {
    throw ConfigError("dirac: the Dirac matrix is assembled for the pseudoscalar sector only");
  }
  const SectorSpectra sp = sector_spectra(s.model, s.grid, s.options);
  const DiracCheckResult d = dirac_spectrum_check(s.model, s.grid, sp, s.options);
  json report = report_skeleton("dirac", s.model, s.grid, cfg);
  report["analytic"] = analytic_section(s.model, sp.window);

  std::vector<double> analytic_all;
  std::vector<double> positive;
  std::vector<double> negative;
  if (report["analytic"]["available"].get<bool>()) {
    const auto dl = dirac_levels(s.model, analytic_count(s.model, sp.window));
    positive = dl.positive;
    negative = dl.negative;
    analytic_all = positive;
    analytic_all.insert(analytic_all.end(), negative.begin(), negative.end());
    json series = {{"positive", positive}, {"negative", negative}};
    // Gap from each closed-form level to the nearest numeric level.
    json gaps = json::array();
    for (double e : analytic_all) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& z : d.levels) best = std::min(best, std::abs(z - e));
      const bool resolved = e * e - s.model.mass * s.model.mass < sp.window;
      gaps.push_back({{"value", e}, {"gap", resolved ? json(best) : json(nullptr)}});
    }
    series["gaps"] = gaps;
    report["analytic"]["dirac"] = series;
  }
  for (const auto& z : d.levels) {
    json e = complex_json(z);
    e["series"] = z.real() >= 0.0 ? "positive" : "negative";
    double gap = 0.0;
    const long k = nearest(analytic_all, z, gap);
    e["analytic"] = k >= 0 ? json(analytic_all[static_cast<std::size_t>(k)]) : json(nullptr);
    e["gap"] = k >= 0 ? json(gap) : json(nullptr);
    report["spectra"]["dirac"].push_back(e);
  }
  for (int i = 1; i <= 2; ++i) {
    json arr = json::array();
    for (const auto& p : sp.physical[i - 1].pairs) arr.push_back(complex_json(p.value));
    report["spectra"]["sector" + std::to_string(i)] = arr;
  }
  for (const auto& c : d.records) report["checks"].push_back(check_json(c));
  emit(cfg, report, out, spectrum_csv);
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const Setup s = prepare(cfg);
  std::string body;
  if (cfg.table == ExportTable::Potentials) {
    body = csv_row({"x", "re_W", "im_W", "re_U1", "im_U1", "re_U2", "im_U2"});
    for (double x : s.grid.nodes) {
      const Complex w = superpotential_value(s.model, x);
      const Complex u1 = partner_potential(s.model, 1, x, s.options.policy);
      const Complex u2 = partner_potential(s.model, 2, x, s.options.policy);
      body += csv_row({format_real(x), format_real(w.real()), format_real(w.imag()),
                       format_real(u1.real()), format_real(u1.imag()),
                       format_real(u2.real()), format_real(u2.imag())});
    }
  } else if (cfg.table == ExportTable::Eigenvectors) {
    const SectorSpectra sp = sector_spectra(s.model, s.grid, s.options, s.mode);
    const auto layout = layout_for(s.model);
    body = csv_row({"sector", "level", "re_eps", "im_eps", "x", "re_v", "im_v"});
    for (int i = 1; i <= 2; ++i) {
      const auto& xs = s.grid.points(layout.of_sector(i));
      std::size_t level = 0;
      for (const auto& p : sp.physical_coarse[i - 1].pairs) {
        if (p.vector.empty()) continue;
        for (std::size_t k = 0; k < xs.size(); ++k) {
          body += csv_row({std::to_string(i), std::to_string(level),
                           format_real(p.value.real()), format_real(p.value.imag()),
                           format_real(xs[k]), format_real(p.vector[k].real()),
                           format_real(p.vector[k].imag())});
        }
        ++level;
      }
    }
  } else {
    if (s.model.sector != Sector::Pseudoscalar) {
      throw ConfigError("export dirac: pseudoscalar sector only");
    }
    const SectorSpectra sp = sector_spectra(s.model, s.grid, s.options);
    const DiracCheckResult d = dirac_spectrum_check(s.model, s.grid, sp, s.options);
    const DiracBand band = dirac_band(s.model, s.grid);
    const auto levels = d.levels;
    EigenOptions eo;
    eo.tol_eig = s.options.tol_eig;
    const Spectrum vs = eigen_dense_selected(
        band.matrix,
        [&levels](Complex z) {
          return std::any_of(levels.begin(), levels.end(),
                             [z](Complex e) { return std::abs(e - z) <= 1e-12 * (1.0 + std::abs(e)); });
        },
        eo);
    std::vector<CVector> spinors;
    for (const auto& p : vs.pairs) {
      if (p.vector.empty()) continue;
      CVector block(p.vector.size());
      for (std::size_t k = 0; k < block.size(); ++k) block[band.order[k]] = p.vector[k];
      spinors.push_back(std::move(block));
    }
    const auto layout = layout_for(s.model);
    std::vector<std::string> header = {"component", "x"};
    for (std::size_t k = 0; k < spinors.size(); ++k) {
      header.push_back("re_psi_" + std::to_string(k));
      header.push_back("im_psi_" + std::to_string(k));
    }
    body = csv_row(header);
    std::size_t row = 0;
    for (const auto& [name, lat] : {std::pair{"upper", layout.upper}, std::pair{"lower", layout.lower}}) {
      for (double x : s.grid.points(lat)) {
        std::vector<std::string> fields = {name, format_real(x)};
        for (const auto& v : spinors) {
          fields.push_back(format_real(v[row].real()));
          fields.push_back(format_real(v[row].imag()));
        }
        body += csv_row(fields);
        ++row;
      }
    }
  }
  write_output(cfg.out, body, out);
  return kExitOk;
}

namespace {

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  set_log_level(log_level_from_env());
  CLI::App app{"Pseudo-supersymmetric Dirac operators: spectra and identity checks",
               "pseudosusy"};
  app.require_subcommand(1, 1);
  std::string config_path, save_path, table_path;
  std::string model, mode, checks, format, out_path, sector, table;
  double p = 0, q = 0, alpha = 0, c = 0, lambda = 0, a = 0, m = 0, xmax = 0;
  double tol_eig = 0, tol_match = 0;
  int kappa = 0;
  std::size_t n = 0;
  bool fd = false;

  std::vector<CLI::Option*> opts;
  auto add = [&](CLI::Option* o) {
    opts.push_back(o);
    return o;
  };
  add(app.add_option("--config", config_path, "JSON config file (schema_version 1)"));
  add(app.add_option("--save-config", save_path, "write the effective config to FILE"));
  auto* o_model = add(app.add_option("--model", model, "scarf2 | ptosc | scalartanh | custom"));
  auto* o_p = add(app.add_option("--p", p, "Scarf II p"));
  auto* o_q = add(app.add_option("--q", q, "Scarf II q"));
  auto* o_alpha = add(app.add_option("--alpha", alpha, "oscillator alpha"));
  auto* o_kappa = add(app.add_option("--kappa", kappa, "oscillator quasi-parity (+1 or -1)"));
  auto* o_c = add(app.add_option("--c", c, "oscillator contour shift"));
  auto* o_lambda = add(app.add_option("--lambda", lambda, "scalar tanh lambda"));
  auto* o_a = add(app.add_option("--a", a, "scalar tanh shift a"));
  auto* o_m = add(app.add_option("--m", m, "mass"));
  auto* o_sector = add(app.add_option("--sector", sector, "custom model sector: pseudoscalar | scalar"));
  auto* o_table_file = add(app.add_option("--table-file", table_path, "custom W table, CSV x,re_W,im_W"));
  auto* o_fd = add(app.add_flag("--fd-derivative", fd, "differentiate custom tables numerically"));
  auto* o_xmax = add(app.add_option("--xmax", xmax, "box half-width"));
  auto* o_n = add(app.add_option("--n", n, "interior grid nodes"));
  auto* o_mode = add(app.add_option("--mode", mode, "factored | direct"));
  auto* o_checks = add(app.add_option("--checks", checks, "comma-separated check names"));
  auto* o_format = add(app.add_option("--format", format, "json | csv"));
  auto* o_out = add(app.add_option("--out", out_path, "output path, - for stdout"));
  auto* o_table = add(app.add_option("--export", table, "potentials | eigenvectors | dirac"));
  auto* o_tol_eig = add(app.add_option("--tol-eig", tol_eig, "eigenpair residual tolerance"));
  auto* o_tol_match = add(app.add_option("--tol-match", tol_match, "two-grid match tolerance"));

  std::string command;
  for (const char* name : {"spectrum", "verify", "dirac", "export"}) {
    app.add_subcommand(name, std::string("run ") + name)->fallthrough()->callback(
        [&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pseudosusy: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    const auto set = [](CLI::Option* o) { return o->count() > 0; };
    if (set(o_model)) cfg.model = model;
    if (set(o_p)) cfg.p = p;
    if (set(o_q)) cfg.q = q;
    if (set(o_alpha)) cfg.alpha = alpha;
    if (set(o_kappa)) cfg.kappa = kappa;
    if (set(o_c)) cfg.c = c;
    if (set(o_lambda)) cfg.lambda = lambda;
    if (set(o_a)) cfg.a = a;
    if (set(o_m)) cfg.m = m;
    if (set(o_sector)) cfg.sector = sector;
    if (set(o_table_file)) read_table_csv(table_path, cfg);
    if (set(o_fd)) cfg.fd_derivative = fd;
    if (set(o_xmax)) cfg.x_max = xmax;
    if (set(o_n)) cfg.n_points = n;
    if (set(o_mode)) cfg.mode = mode;
    if (set(o_checks)) cfg.checks = split_csv_list(checks);
    if (set(o_format)) {
      if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
      cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    }
    if (set(o_out)) cfg.out = out_path;
    if (set(o_table)) {
      RunConfig probe;
      json j = config_to_json(probe);
      j["output"]["table"] = table;
      cfg.table = config_from_json(j).table;
    }
    if (set(o_tol_eig)) cfg.tol_eig = tol_eig;
    if (set(o_tol_match)) cfg.tol_match = tol_match;
    validate(cfg);
    if (!save_path.empty()) {
      write_output(save_path, config_to_json(cfg).dump(2) + "\n", out);
    }
    log_info("command " + command);
    if (command == "spectrum") return cmd_spectrum(cfg, out);
    if (command == "verify") return cmd_verify(cfg, out);
    if (command == "dirac") return cmd_dirac(cfg, out);
    return cmd_export(cfg, out);
  } catch (const ConfigError& e) {
    err << "pseudosusy: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OutputError& e) {
    err << "pseudosusy: output error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "pseudosusy: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DivergentMap& e) {
    err << "pseudosusy: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    // Remaining library errors (argument, derivative, availability) come
    // from the requested configuration.
    err << "pseudosusy: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace psusy::cli
