#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace taam::cli {

/// Exit codes: 0 normal / no fallacy, 1 fallacy found, 2 usage, file or cap error.
inline constexpr int kOk = 0;
inline constexpr int kFallacy = 1;
inline constexpr int kError = 2;

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taam::cli
