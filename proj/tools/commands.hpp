#pragma once

#include <iosfwd>

namespace moyal::cli {

/// Exit codes: 0 pass, 1 numeric failure, 2 usage or guard error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moyal::cli
