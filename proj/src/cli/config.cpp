#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pseudosusy/errors.hpp"

namespace psusy::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& dst, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "' in " + where);
  }
}

std::set<std::string> model_keys(const std::string& kind) {
  if (kind == "scarf2") return {"kind", "p", "q", "m"};
  if (kind == "ptosc") return {"kind", "alpha", "kappa", "c", "m"};
  if (kind == "scalartanh") return {"kind", "lambda", "a", "m"};
  if (kind == "custom") return {"kind", "sector", "table", "m", "fd_derivative"};
  throw ConfigError("unknown model kind '" + kind + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ConfigError("format must be json or csv");
}

ExportTable parse_table(const std::string& s) {
  if (s == "potentials") return ExportTable::Potentials;
  if (s == "eigenvectors") return ExportTable::Eigenvectors;
  if (s == "dirac") return ExportTable::Dirac;
  throw ConfigError("export table must be potentials, eigenvectors or dirac");
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

std::string to_string(ExportTable t) {
  switch (t) {
    case ExportTable::Potentials: return "potentials";
    case ExportTable::Eigenvectors: return "eigenvectors";
    case ExportTable::Dirac: return "dirac";
  }
  return "potentials";
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j, {"schema_version", "model", "grid", "mode", "checks", "output",
                     "tolerances"},
                 "config");
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != kSchemaVersion) {
    throw ConfigError("config schema_version must be 1");
  }
  RunConfig cfg;
  if (j.contains("model")) {
    const json& jm = j.at("model");
    if (!jm.is_object()) throw ConfigError("model must be a JSON object");
    read(jm, "kind", cfg.model, "model");
    reject_unknown(jm, model_keys(cfg.model), "model (" + cfg.model + ")");
    read(jm, "p", cfg.p, "model");
    read(jm, "q", cfg.q, "model");
    read(jm, "alpha", cfg.alpha, "model");
    read(jm, "kappa", cfg.kappa, "model");
    read(jm, "c", cfg.c, "model");
    read(jm, "lambda", cfg.lambda, "model");
    read(jm, "a", cfg.a, "model");
    read(jm, "m", cfg.m, "model");
    read(jm, "sector", cfg.sector, "model");
    read(jm, "fd_derivative", cfg.fd_derivative, "model");
    if (jm.contains("table")) {
      const json& jt = jm.at("table");
      reject_unknown(jt, {"x", "re_w", "im_w"}, "model.table");
      read(jt, "x", cfg.table_x, "model.table");
      read(jt, "re_w", cfg.table_re_w, "model.table");
      read(jt, "im_w", cfg.table_im_w, "model.table");
    }
  }
  if (j.contains("grid")) {
    const json& jg = j.at("grid");
    reject_unknown(jg, {"x_max", "n_points"}, "grid");
    if (jg.contains("x_max")) {
      double v = 0.0;
      read(jg, "x_max", v, "grid");
      cfg.x_max = v;
    }
    read(jg, "n_points", cfg.n_points, "grid");
  }
  read(j, "mode", cfg.mode, "config");
  read(j, "checks", cfg.checks, "config");
  if (j.contains("output")) {
    const json& jo = j.at("output");
    reject_unknown(jo, {"format", "path", "table"}, "output");
    std::string f = to_string(cfg.format);
    read(jo, "format", f, "output");
    cfg.format = parse_format(f);
    read(jo, "path", cfg.out, "output");
    std::string t = to_string(cfg.table);
    read(jo, "table", t, "output");
    cfg.table = parse_table(t);
  }
  if (j.contains("tolerances")) {
    const json& jt = j.at("tolerances");
    reject_unknown(jt, {"tol_eig", "tol_match"}, "tolerances");
    read(jt, "tol_eig", cfg.tol_eig, "tolerances");
    read(jt, "tol_match", cfg.tol_match, "tolerances");
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json jm = {{"kind", cfg.model}};
  if (cfg.model == "scarf2") {
    jm["p"] = cfg.p;
    jm["q"] = cfg.q;
  } else if (cfg.model == "ptosc") {
    jm["alpha"] = cfg.alpha;
    jm["kappa"] = cfg.kappa;
    jm["c"] = cfg.c;
  } else if (cfg.model == "scalartanh") {
    jm["lambda"] = cfg.lambda;
    jm["a"] = cfg.a;
  } else if (cfg.model == "custom") {
    jm["sector"] = cfg.sector;
    jm["fd_derivative"] = cfg.fd_derivative;
    jm["table"] = {{"x", cfg.table_x}, {"re_w", cfg.table_re_w}, {"im_w", cfg.table_im_w}};
  }
  jm["m"] = cfg.m;
  json jg = {{"n_points", cfg.n_points}};
  if (cfg.x_max) jg["x_max"] = *cfg.x_max;
  return json{{"schema_version", kSchemaVersion},
              {"model", jm},
              {"grid", jg},
              {"mode", cfg.mode},
              {"checks", cfg.checks},
              {"output",
               {{"format", to_string(cfg.format)},
                {"path", cfg.out},
                {"table", to_string(cfg.table)}}},
              {"tolerances", {{"tol_eig", cfg.tol_eig}, {"tol_match", cfg.tol_match}}}};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void validate(const RunConfig& cfg) {
  model_keys(cfg.model);
  if (cfg.mode != "factored" && cfg.mode != "direct") {
    throw ConfigError("mode must be factored or direct");
  }
  const auto& known = known_checks();
  for (const auto& c : cfg.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw ConfigError("unknown check '" + c + "'");
    }
  }
  if (cfg.n_points < 3 || cfg.n_points > 2000) {
    throw ConfigError("n_points must lie in [3, 2000]");
  }
  if (cfg.x_max && !(*cfg.x_max > 0.0)) throw ConfigError("x_max must be positive");
  if (!(cfg.tol_eig > 0.0) || !(cfg.tol_match > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
  if (cfg.sector != "pseudoscalar" && cfg.sector != "scalar") {
    throw ConfigError("sector must be pseudoscalar or scalar");
  }
  if (cfg.out.empty()) throw ConfigError("output path must not be empty");
  // Parameter domains are checked by the model factories.
  try {
    make_model(cfg);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ModelSpec make_model(const RunConfig& cfg) {
  if (cfg.model == "scarf2") return ModelSpec::scarf2(cfg.p, cfg.q, cfg.m);
  if (cfg.model == "ptosc") return ModelSpec::pt_oscillator(cfg.alpha, cfg.kappa, cfg.c, cfg.m);
  if (cfg.model == "scalartanh") return ModelSpec::scalar_tanh(cfg.lambda, cfg.a, cfg.m);
  if (cfg.model == "custom") {
    if (cfg.table_re_w.size() != cfg.table_x.size() ||
        cfg.table_im_w.size() != cfg.table_x.size()) {
      throw ConfigError("custom table columns must have equal length");
    }
    CVector w(cfg.table_x.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = {cfg.table_re_w[k], cfg.table_im_w[k]};
    return ModelSpec::custom_sampled(cfg.table_x, w,
                                     cfg.sector == "scalar" ? Sector::Scalar
                                                            : Sector::Pseudoscalar,
                                     cfg.m);
  }
  throw ConfigError("unknown model kind '" + cfg.model + "'");
}

Grid make_grid(const RunConfig& cfg, const ModelSpec& model) {
  const double x_max = cfg.x_max.value_or(default_x_max(model));
  if (model.kind == ModelKind::CustomSampled && x_max > default_x_max(model) + 1e-12) {
    throw ConfigError("x_max exceeds the custom table range");
  }
  return build_grid(x_max, cfg.n_points);
}

Construction make_mode(const RunConfig& cfg) {
  return cfg.mode == "direct" ? Construction::Direct : Construction::Factored;
}

VerifyOptions make_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.tol_eig = cfg.tol_eig;
  o.tol_match = cfg.tol_match;
  o.policy = cfg.fd_derivative ? DerivativePolicy::FiniteDifference
                               : DerivativePolicy::Analytic;
  return o;
}

void read_table_csv(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("table file '" + path + "' is empty");
  if (line != "x,re_W,im_W") {
    throw ConfigError("table header must be x,re_W,im_W");
  }
  cfg.table_x.clear();
  cfg.table_re_w.clear();
  cfg.table_im_w.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw ConfigError("malformed table row: " + line);
    }
    try {
      cfg.table_x.push_back(std::stod(a));
      cfg.table_re_w.push_back(std::stod(b));
      cfg.table_im_w.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ConfigError("non-numeric table row: " + line);
    }
  }
}

}  // namespace psusy::cli
