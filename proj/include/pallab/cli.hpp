#pragma once

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace pallab {

/// Exit codes: 0 success, 1 a check failed, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Environment variable that overrides --threads.
inline constexpr const char* kThreadsEnv = "PALINDROME_LAB_THREADS";

}  // namespace pallab
