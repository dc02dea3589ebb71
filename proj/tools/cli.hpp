#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace refgen::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kReferentialFailure = 2;

// args excludes the program name. Payload goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refgen::cli
