#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyharm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitInvariant = 4;
inline constexpr int kExitUsage = 64;

// args excludes the program name. Reports go to `out` (or --out), messages
// to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyharm
