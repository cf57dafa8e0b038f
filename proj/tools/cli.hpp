#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lnratio::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

/// Parses argv and runs one subcommand. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lnratio::cli
