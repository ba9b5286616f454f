#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ofa::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericFailure = 3 };

/// Runs the command line `args` (args[0] is the program name). Records go
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `%.12g` rendering used for every CSV float.
std::string format_real(double v);

}  // namespace ofa::cli
