#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairclust::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kResourceCap = 2,
  kInternalError = 3,
};

// Runs one command line (args[0] is the program name). Reports go to `out`
// (or --out), diagnostics to `err`; nothing is written to `out` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairclust::cli
