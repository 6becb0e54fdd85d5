#include "cli/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace psusy::cli {

using nlohmann::json;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) s += ',';
    s += fields[k];
  }
  s += '\n';
  return s;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json model_json(const ModelSpec& model) {
  json j = {{"kind", to_string(model.kind)},
            {"sector", to_string(model.sector)},
            {"m", model.mass}};
  switch (model.kind) {
    case ModelKind::ScarfII:
      j["p"] = model.scarf().p;
      j["q"] = model.scarf().q;
      break;
    case ModelKind::PTOscillator:
      j["alpha"] = model.oscillator().a_osc;
      j["kappa"] = model.oscillator().kappa;
      j["c"] = model.oscillator().c;
      break;
    case ModelKind::ScalarTanh:
      j["lambda"] = model.scalar_tanh_params().lambda;
      j["a"] = model.scalar_tanh_params().a_shift;
      break;
    case ModelKind::CustomSampled:
      j["table_points"] = model.table().x.size();
      break;
  }
  const auto zs = zero_mode_sector(model);
  j["zero_mode_sector"] = zs ? json(*zs) : json(nullptr);
  return j;
}

json grid_json(const Grid& grid) {
  return json{{"x_min", grid.x_min()},
              {"x_max", grid.x_max},
              {"n_points", grid.n_points},
              {"h", grid.h}};
}

json check_json(const CheckRecord& c) {
  return json{{"name", c.name},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"pass", c.pass},
              {"mode", c.mode == Construction::Factored ? "factored" : "direct"},
              {"notes", c.notes}};
}

json report_skeleton(const std::string& command, const ModelSpec& model,
                     const Grid& grid, const RunConfig& cfg) {
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"model", model_json(model)},
              {"grid", grid_json(grid)},
              {"mode", cfg.mode},
              {"checks", json::array()},
              {"spectra",
               {{"sector1", json::array()},
                {"sector2", json::array()},
                {"dirac", json::array()}}},
              {"analytic", json::object()}};
}

void write_output(const std::string& path, const std::string& content,
                  std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << content;
    stdout_stream.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw OutputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw OutputError("cannot move output into place at '" + path + "'");
  }
}

}  // namespace psusy::cli
