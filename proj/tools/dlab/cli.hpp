#pragma once

#include <ostream>

namespace dlab {

enum ExitCode : int {
  kAllPass = 0,
  kAnyFail = 1,
  kConfigError = 2,
};

/// Parses argv and runs one subcommand. Report lines go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dlab
