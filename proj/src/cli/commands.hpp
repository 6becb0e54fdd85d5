#pragma once

// Subcommands of the pseudosusy tool. Each returns the process exit code:
// 0 success, 1 failed check, 2 usage/config/output error, 3 numerical failure.

#include <ostream>

#include "cli/config.hpp"

namespace psusy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_dirac(const RunConfig& cfg, std::ostream& out);
int cmd_export(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point: `pseudosusy <spectrum|verify|dirac|export>
/// [--config FILE] [flags]`. Reports go to `out` when --out is "-",
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psusy::cli
