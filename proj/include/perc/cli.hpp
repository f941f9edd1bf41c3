#ifndef PERC_CLI_HPP
#define PERC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace perc {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitCheckFailed = 3, kExitBudget = 4 };

/// Entry point of the `perc` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perc

#endif  // PERC_CLI_HPP
