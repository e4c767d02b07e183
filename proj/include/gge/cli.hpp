#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kProviderError = 3,
};

// Runs the ggx command line. `args[0]` is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gge::cli
