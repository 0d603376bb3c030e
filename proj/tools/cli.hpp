#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace triaxis::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, validation_error = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// the --out file, or to `out` when none is given; diagnostics go to `err`.
/// Nothing is written to the --out path unless the whole run succeeds.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace triaxis::cli
