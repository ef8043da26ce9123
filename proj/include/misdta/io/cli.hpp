#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace misdta {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitValidation = 2,
  kExitNumerical = 3,
};

/// Runs the command line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace misdta
