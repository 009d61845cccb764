#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clnode {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitRefused = 2;  // over budget or out of working precision
constexpr int kExitUsage = 64;

// The clnode command line, without the program name. Results go to `out`
// (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clnode
