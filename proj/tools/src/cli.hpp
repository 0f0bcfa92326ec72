#pragma once

#include <ostream>

namespace muskat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalHalt = 2;

/// Entry point of the `muskat` tool: subcommands run, norms, verify and convergence.
/// Returns the process exit code; nothing escapes as an exception.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace muskat::cli
