#pragma once

#include <iosfwd>

namespace fermidiscord::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Parses argv, runs one subcommand and writes its report to `out` (or to
/// --out). Diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fermidiscord::cli
