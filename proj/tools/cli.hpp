#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsa::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

// Runs one command line (without the program name). Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsa::cli
