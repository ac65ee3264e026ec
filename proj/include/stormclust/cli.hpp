#ifndef STORMCLUST_CLI_HPP
#define STORMCLUST_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace stormclust::cli {

/// Exit codes: 0 success, 1 computation or validation error, 2 I/O, schema or usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitInput = 2;

/// Runs the command-line tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stormclust::cli

#endif
