#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idstates::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCheckFailed = 2;

/// Runs one CLI invocation. `args` excludes the program name. Normal output
/// goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idstates::cli
