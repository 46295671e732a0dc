#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mertens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

// Runs the command line `args` (without the program name). Returns the
// process exit code: 0 on success, 2 on usage or domain errors, 3 when a
// verification suite fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mertens::cli
