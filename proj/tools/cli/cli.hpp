#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kannan::cli {

/// Stable exit-code contract of kannan-lab.
enum ExitCode : int {
  kSuccess = 0,      // valid / member / every claim holds
  kNegative = 1,     // non-member / claim failure / certificate failed
  kInputError = 2,   // unreadable or malformed input, bad flags
};

/// Runs one command. `args` excludes the program name. Documents named "-"
/// (or omitted) are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

/// Default worker count: $KANNAN_JOBS when set to a positive integer, else 1.
std::size_t default_jobs();

}  // namespace kannan::cli
