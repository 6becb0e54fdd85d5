#pragma once

// Report serialization: JSON documents, CSV tables with 17 significant
// digits, and atomic file output.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "pseudosusy/pseudosusy.hpp"

namespace psusy::cli {

// Output could not be written; maps to exit code 2.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g: 17 significant digits, lossless for doubles.
std::string format_real(double v);

/// Joins fields with ',' and terminates with '\n'.
std::string csv_row(const std::vector<std::string>& fields);

nlohmann::json model_json(const ModelSpec& model);
nlohmann::json grid_json(const Grid& grid);
nlohmann::json check_json(const CheckRecord& c);
nlohmann::json complex_json(Complex z);

/// Skeleton of every report: schema_version, command, model, grid, mode,
/// checks, spectra {sector1, sector2, dirac}, analytic.
nlohmann::json report_skeleton(const std::string& command, const ModelSpec& model,
                               const Grid& grid, const RunConfig& cfg);

/// Writes `content` to `path` (stdout when "-") via temp file + rename.
void write_output(const std::string& path, const std::string& content, std::ostream& stdout_stream);

}  // namespace psusy::cli
