#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaborlab::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,          // numerical failure (grid too coarse, empty truncation, ...)
  kBadInput = 2,         // parse error, bad range, unknown family, bad flag
  kSingular = 3,         // singular generator matrix
  kUnsupported = 4,      // dimension outside 1..3
  kRelationFailed = 5,   // relation-check found a failing check
};

// args excludes the program name. JSON and CSV payloads go to out,
// diagnostics and help text to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaborlab::cli
