#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vtergm {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // validation ran and reported a failure
  kExitUsage = 2,
  kExitDomain = 3,
  kExitResource = 4,
};

/// Runs one invocation; `args` excludes the program name. Summaries go to
/// `out`, machine-readable error JSON to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vtergm
