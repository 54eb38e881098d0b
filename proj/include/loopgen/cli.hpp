#pragma once

/// \file cli.hpp
/// The `loopgen` command line, callable in-process for tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace loopgen {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitVerification = 2,
  kExitBudget = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loopgen
