#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polysym::cli {

enum ExitCode : int { Ok = 0, VerdictFailed = 1, UsageError = 2 };

// Runs `polysym <args...>` (args excludes the program name). Reports go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polysym::cli
