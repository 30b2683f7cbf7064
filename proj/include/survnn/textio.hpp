#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace survnn {

// Shortest decimal form that round-trips the exact double (%.17g).
std::string format_double(double value);

// Strict full-token parse; rejects empty, trailing junk, and non-finite
// unless allow_nonfinite.
bool parse_double(std::string_view token, double& out, bool allow_nonfinite = false);
bool parse_long(std::string_view token, long& out);

std::vector<std::string_view> split(std::string_view text, char sep);

// Whole-file read; throws ParseError when the file cannot be opened.
std::string read_text_file(const std::string& path);

// Write-temp-then-rename so readers never observe a half-written file.
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace survnn
