#pragma once

// Run configuration shared by all subcommands: JSON (de)serialization with
// strict key checking, and conversion to library objects.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudosusy/discretize.hpp"
#include "pseudosusy/models.hpp"
#include "pseudosusy/pseudosusy.hpp"

namespace psusy::cli {

inline constexpr int kSchemaVersion = 1;

// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv };
enum class ExportTable { Potentials, Eigenvectors, Dirac };

struct RunConfig {
  std::string model = "scarf2";  // scarf2 | ptosc | scalartanh | custom
  double p = 1.25;
  double q = 0.75;
  double alpha = 0.4;
  int kappa = 1;
  double c = 0.5;
  double lambda = 4.0;
  double a = 0.5;
  double m = 1.0;
  std::string sector = "pseudoscalar";  // custom models only
  std::vector<double> table_x;          // custom models only
  std::vector<double> table_re_w;
  std::vector<double> table_im_w;
  bool fd_derivative = false;  // finite-difference derivative for custom tables

  std::optional<double> x_max;  // model default when unset
  std::size_t n_points = 800;
  std::string mode = "factored";  // factored | direct
  std::vector<std::string> checks = known_checks();
  OutputFormat format = OutputFormat::Json;
  std::string out = "-";  // "-" is stdout
  ExportTable table = ExportTable::Potentials;
  double tol_eig = 1e-8;
  double tol_match = 1e-3;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

/// Throws ConfigError for any inconsistent field.
void validate(const RunConfig& cfg);

ModelSpec make_model(const RunConfig& cfg);
Grid make_grid(const RunConfig& cfg, const ModelSpec& model);
Construction make_mode(const RunConfig& cfg);
VerifyOptions make_options(const RunConfig& cfg);

/// Reads a custom superpotential table: CSV with header x,re_W,im_W.
void read_table_csv(const std::string& path, RunConfig& cfg);

std::string to_string(OutputFormat f);
std::string to_string(ExportTable t);

}  // namespace psusy::cli
