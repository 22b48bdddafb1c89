#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fneg::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInternal = 2,
  kParse = 3,
  kValidation = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fneg::cli
