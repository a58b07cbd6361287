#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace listfair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the CLI on `args` (program name excluded). Results go to `out` when a
/// subcommand has no --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace listfair::cli
