#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramseyforge {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitSoftware = 70;

// Runs one command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramseyforge
