#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simulate {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kNumerical = 2 };

/// Entry point of the `simulate` executable; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simulate
