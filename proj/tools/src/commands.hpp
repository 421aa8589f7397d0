#pragma once

#include <iosfwd>

namespace hyperpotential::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomainError = 2, kVerificationFailed = 3 };

// Parses the command line and runs one subcommand. JSON (or text) results go
// to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyperpotential::cli
