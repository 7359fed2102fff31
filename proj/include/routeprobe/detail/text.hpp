#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace routeprobe::detail {

std::string_view trim(std::string_view s);

/// Splits on `delim`, trimming each field. A trailing delimiter yields a
/// trailing empty field.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

/// Splits text into lines; recognizes \n and \r\n.
std::vector<std::string_view> split_lines(std::string_view text);

/// Full-field numeric parses; nullopt on trailing junk or empty input.
std::optional<double> parse_double(std::string_view s);
std::optional<long> parse_long(std::string_view s);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

/// Two-digit zero-padded time component.
std::string pad2(int v);

bool is_identifier(std::string_view s);

}  // namespace routeprobe::detail
