#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsp::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kImpossibleBranch = 3, kIo = 4 };

/// Entry point behind the `rsp` binary; `args` excludes the program name.
/// Commands: run, sweep, verify, security.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsp::cli
