#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kResource = 3,
};

/// Runs one `qwalk` invocation. args excludes the program name. The document
/// goes to out; diagnostics, cost estimates and --meta run info go to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
