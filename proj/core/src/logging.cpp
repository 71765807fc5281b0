#include "tdlc/logging.hpp"

#include <cstdlib>
#include <iostream>

namespace tdlc {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("TDLC_ENTROPY_LOG");
    if (!env) return LogLevel::Error;
    std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Error;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::Info) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << message << "\n";
}

}  // namespace tdlc
