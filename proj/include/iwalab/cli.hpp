#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iwalab {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitDomain = 2, kExitVerifyFailed = 3 };

// Runs the iwalab command line. JSON (or a table) goes to `out`; usage text
// and diagnostics go to `err`. Domain errors are reported on `out` as
// {"error": kind, "message": ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iwalab
