#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sgnmod::csv {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
// Inverse of format_double; accepts "nan", "inf", "-inf". Throws
// std::invalid_argument on trailing garbage.
double parse_double(std::string_view text);
long parse_int(std::string_view text);

// Splits on ',' (no quoting; the emitted dialect never needs it).
std::vector<std::string_view> split_line(std::string_view line);

// Joins already formatted fields with ','.
std::string join(const std::vector<std::string>& fields);

} // namespace sgnmod::csv
