#pragma once

#include <iosfwd>

namespace rwinv::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitNonConvergence = 2,
  kExitStructural = 3,
};

/// Parses argv and runs one subcommand: expect, simulate, reconstruct,
/// solve, check or gradcheck. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwinv::app
