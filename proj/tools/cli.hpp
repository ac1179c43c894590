#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace edgeidle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitInvariant = 3;

/// Runs one command line (args[0] is the program name) and returns the exit code.
/// Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeidle::cli
