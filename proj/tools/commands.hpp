#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnts::tool {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitNotConverged = 2,
  kExitUsage = 64,
  kExitIo = 74,
};

/// Runs `nnts <subcommand> ...` (fit, density, verify). args excludes the
/// program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nnts::tool
