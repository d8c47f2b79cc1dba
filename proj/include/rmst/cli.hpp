#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmst {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBlowup = 3;
inline constexpr int kExitNoSolution = 4;  // NotConnected / RestartsExhausted
inline constexpr int kExitTimeLimit = 5;

// Runs the tool on `args` (without the program name). Reports and generated
// files go to `out` or to --out paths; diagnostics and traces go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmst
