#pragma once

#include <ostream>

namespace hardy::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericFailure = 3;

// Runs the command line; JSON goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
