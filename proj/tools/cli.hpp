#pragma once

#include <iosfwd>

namespace emg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitMismatch = 4;

/// Runs one command line. Results go to `out` unless --output is given; the
/// key=value report goes to --report when given, otherwise to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emg::cli
