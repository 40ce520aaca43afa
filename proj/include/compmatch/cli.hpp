#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compmatch {

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kUsage = 64;
inline constexpr int kParse = 65;
}  // namespace exit_code

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compmatch
