#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhcub::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInputError = 2,
  kBudgetExhausted = 3,
};

/// Runs the hhcub command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhcub::cli
