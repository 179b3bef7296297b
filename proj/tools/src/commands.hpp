#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strust::cli {

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;     // unreadable input, parse errors, usage errors
inline constexpr int kExitStore = 3;     // store JSON could not be loaded
inline constexpr int kExitArgument = 4;  // argument outside its domain

// Entry point shared by main() and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace strust::cli
