#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

// Runs the command line (without the program name) and returns the exit
// code. Normal output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgb::cli
