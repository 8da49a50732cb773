#pragma once

#include <string>
#include <vector>

namespace lgt::cli {

/// Exit codes: 0 success, 2 flag/usage error, 3 unreadable or unwritable
/// file, 4 validation/invariant error, 5 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitInternal = 5;

/// Runs one command (argv without the program name). Errors print a
/// single machine-readable line `error: <kind>: <message>` on stderr.
int run(const std::vector<std::string>& args);

}  // namespace lgt::cli
