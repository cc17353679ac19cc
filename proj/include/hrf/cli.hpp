#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hrf {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitCheck = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitUsage = 64;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "4..12", "100,400,1600" or a mix such as "4..6,9".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace hrf
