#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcbounds::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kCheckFailure = 3,
};

// Runs one command. `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcbounds::cli
