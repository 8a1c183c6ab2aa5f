#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumscope::cli {

enum ExitCode : int {
  kOk = 0,
  kMissingInput = 2,
  kDataError = 3,
  kUsage = 64,
};

// Runs the command line `args` (args[0] is the program name). Results go to
// the files named by the flags; diagnostics go to `err` as key=value lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumscope::cli
