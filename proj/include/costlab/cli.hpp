#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costlab::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`. Output is byte-identical for equal inputs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costlab::cli
