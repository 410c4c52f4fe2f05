#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ehr {

/// Exit codes: every requested check holds; some law fails; the input could
/// not be parsed or the request was malformed.
inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

/// Runs one ehrtool invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ehr
