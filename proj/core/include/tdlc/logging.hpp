#pragma once

#include <string>

namespace tdlc {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level is read once from TDLC_ENTROPY_LOG (error|info|debug, default error).
// All diagnostics go to standard error; standard output stays machine-clean.
LogLevel log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace tdlc
