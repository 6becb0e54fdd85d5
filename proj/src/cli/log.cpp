#include "cli/log.hpp"

#include <cstdlib>
#include <iostream>

namespace psusy::cli {

namespace {

LogLevel g_level = LogLevel::Error;

void emit(LogLevel level, const char* tag, const std::string& msg) {
  if (static_cast<int>(level) <= static_cast<int>(g_level)) {
    std::cerr << "pseudosusy [" << tag << "] " << msg << '\n';
  }
}

}  // namespace

LogLevel log_level_from_env() {
  const char* v = std::getenv("PSEUDOSUSY_LOG");
  if (v == nullptr) return LogLevel::Error;
  const std::string s(v);
  if (s == "debug") return LogLevel::Debug;
  if (s == "info") return LogLevel::Info;
  return LogLevel::Error;
}

void set_log_level(LogLevel level) { g_level = level; }

void log_error(const std::string& msg) { emit(LogLevel::Error, "error", msg); }
void log_info(const std::string& msg) { emit(LogLevel::Info, "info", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::Debug, "debug", msg); }

}  // namespace psusy::cli
