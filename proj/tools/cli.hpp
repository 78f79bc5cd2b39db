#pragma once

#include <ostream>

namespace qrdyn::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_usage = 64;

/// Runs the qrdyn command line. Results go to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qrdyn::cli
