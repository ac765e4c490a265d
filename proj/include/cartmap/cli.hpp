#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartmap::cli {

// Runs one CLI invocation (subcommands: map, eval, sweep, oracle) and
// returns the process exit code: 0 success, 2 validation error, 3 exact
// solver refusal.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace cartmap::cli
