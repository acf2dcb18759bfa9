#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entnf::cli {

enum ExitCode : int { ok = 0, input_error = 2, not_converged = 3 };

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or the --output file), one-line JSON errors to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace entnf::cli
