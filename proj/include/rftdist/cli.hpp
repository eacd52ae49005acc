#pragma once

#include <iosfwd>

namespace rftdist::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kAcceptanceFailure = 3,
};

// Entry point of the `rftdist` tool. Data goes to `out` unless --out is
// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rftdist::cli
