#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphfin::cli {

enum ExitCode : int { kOk = 0, kVerdictFailed = 1, kInputError = 2 };

/// Runs one command; args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphfin::cli
