#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gausshor {

enum ExitCode : int { kExitOk = 0, kExitDriverFailure = 1, kExitInvalidInput = 2 };

/// Runs the command line `args` (args[0] is the program name). Report data
/// goes to `out` or to --output; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gausshor
