#pragma once

// Small text helpers shared by the literal, CSV and config readers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzylln::text {

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// Whole-token parses; throw std::invalid_argument on trailing junk or range errors.
double parse_double(std::string_view token);
std::uint64_t parse_uint(std::string_view token);

std::string_view trim(std::string_view s) noexcept;

/// Splits on `sep`, trimming each piece. An empty input gives one empty field.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_ws(std::string_view s);

}  // namespace fuzzylln::text
