#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dltl {

enum ExitCode : int {
  kTrue = 0,
  kFalse = 1,  // false, rejected, or unsat up to the bound
  kUsage = 2,
  kInput = 3,
  kBudget = 4,  // satcheck gave up before finishing the bound
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dltl
