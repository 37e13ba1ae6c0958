#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netfar::cli {

enum ExitCode : int {
  kOk = 0,
  kParseFailure = 1,
  kUnsupportedClass = 2,
  kInvalidQuery = 3,
  kCheckFailure = 4,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netfar::cli
