#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bisep {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // suite mismatch or search violation
inline constexpr int kExitInput = 2;    // parse or validation error
inline constexpr int kExitUnknown = 3;  // Unknown verdicts under --strict

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bisep
