#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rangekit {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out`, diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rangekit
