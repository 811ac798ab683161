#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lfm {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars).  Used everywhere serialized numbers must survive a
/// save/load cycle bit-exactly.
std::string fmt_double(double v);

/// Fixed-precision formatting for display and plot coordinates.
std::string fmt_fixed(double v, int precision);

/// Strict full-string parses; throw DataError with `context` on failure.
double parse_double(std::string_view text, const std::string& context);
int parse_int(std::string_view text, const std::string& context);

/// Whitespace trim (ASCII).
std::string_view trim(std::string_view s);

/// Split on a delimiter, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

} // namespace lfm
