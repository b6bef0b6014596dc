#pragma once

#include <ostream>

namespace newton_maps {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,
  kExitUsage = 2,
  kExitInput = 3,
  kExitConsistency = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace newton_maps
