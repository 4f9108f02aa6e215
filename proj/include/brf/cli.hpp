#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brf::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsageError = 2,
  kIrrelevant = 3,
};

// Runs the command line `args` (args[0] is the program name). Never throws;
// failures are reported on `err` and through the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brf::cli
