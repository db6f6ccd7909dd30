#pragma once

#include <iosfwd>

namespace strposet {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,  // a condition failed, or a round trip did not recover rho
  kExitUsage = 2,
  kExitInput = 3,  // parse or validation failure
};

/// Runs one command. Primary output goes to `out` unless -o is given;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strposet
