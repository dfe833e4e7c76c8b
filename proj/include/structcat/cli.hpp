#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace structcat::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kUsage = 2 };

// args excludes the program name. Facts go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace structcat::cli
