#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egyfrac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Machine-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace egyfrac::cli
