#pragma once

#include <iosfwd>
#include <string>

#include "qutrit/analysis.hpp"

namespace qutrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

/// Parses "start:stop:count". Throws std::invalid_argument on malformed input.
Grid parse_grid(const std::string& text);

/// Runs one invocation. CSV goes to `out` (or the --out file), diagnostics
/// to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qutrit::cli
