#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace photonstat::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kPartialFailure = 2 };

/// Entry point shared by the executable and the tests; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace photonstat::cli
