#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minrel::cli {

/// Exit codes of the minrel tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 2,
    exit_degenerate = 3,
    exit_io = 4,
};

/// Runs the tool on `args` (without the program name). Normal output goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace minrel::cli
