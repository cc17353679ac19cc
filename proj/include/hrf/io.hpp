#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hrf {

// Shortest representation that round-trips; NaN renders as the empty string.
// Always uses '.' as decimal separator.
std::string format_number(double v);

// Fixed significant digits, for human-readable tables.
std::string format_sig(double v, int digits = 9);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the destination.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<std::string> split(const std::string& text, char sep);

}  // namespace hrf
