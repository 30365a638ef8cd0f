#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace topoconf {

/// Shortest decimal that round-trips to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double value);

/// Parses a decimal literal or inf/-inf; throws IoError on anything else.
double parse_double(std::string_view text);

/// Splits on `sep`, trimming ASCII whitespace around each field.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace topoconf
