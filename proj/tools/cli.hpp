#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace engel::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

// Runs the command line; reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace engel::cli
