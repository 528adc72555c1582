#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matchlab::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kResourceGuard = 3,
  kUndecided = 4,
  kVerificationFailed = 5,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matchlab::cli
