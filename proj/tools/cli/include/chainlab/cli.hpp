#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chainlab::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kUsage = 2,
  kInternal = 3,
};

/// Runs one command. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CHAINLAB_MAX_ORDER or the default cap of 12. Throws DomainError if the
/// variable is set to something other than a positive integer.
int maxOrderFromEnvironment();

}  // namespace chainlab::cli
