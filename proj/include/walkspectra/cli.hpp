#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace walkspectra {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes returned by run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to
// `out` (or the --out file), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace walkspectra
