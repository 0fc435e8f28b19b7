#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hardy {

/// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one `hardy` command line (without the program name). The report
/// goes to `out`, diagnostics and usage text to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy
