#pragma once

// Minimal stderr logger; the level comes from PSEUDOSUSY_LOG
// (error | info | debug, default error).

#include <string>

namespace psusy::cli {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Reads PSEUDOSUSY_LOG; unknown values fall back to error.
LogLevel log_level_from_env();
void set_log_level(LogLevel level);

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace psusy::cli
