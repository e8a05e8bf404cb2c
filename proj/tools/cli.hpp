#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knot_energy::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;    // bad flags, unreadable or malformed files
inline constexpr int exit_numeric = 3;  // pole, self-intersection, sampler, embedding failures

/// Runs one subcommand. `args` excludes the program name. Results go to the
/// --out file or to `out`; errors and warnings go to `err` as JSON lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knot_energy::cli
