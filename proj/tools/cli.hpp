#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msc::cli {

enum ExitCode : int {
  kSuccess = 0,         ///< success, or the tested condition holds
  kConditionFails = 1,  ///< the condition fails; a certificate or reason is printed
  kInputError = 2,      ///< usage, parse, or validation error
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msc::cli
