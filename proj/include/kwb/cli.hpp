#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kwb::cli {

/// Exit statuses of the command-line front end.
enum Exit : int { ok = 0, domain_error = 1, usage_error = 2, budget_exhausted = 3 };

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwb::cli
