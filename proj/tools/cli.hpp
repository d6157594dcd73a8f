#pragma once

#include <ostream>

namespace waring::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Parses argv (argv[0] is the program name), runs the command and writes the
/// report to --out or `out`. Failures print one JSON record on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace waring::cli
