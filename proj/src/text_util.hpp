#pragma once

// Internal helpers shared by the CSV readers and writers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace listfair::detail {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes. Returns nullopt on an unterminated or stray quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

/// Quotes the field only when it contains a comma or a quote.
std::string csv_field(std::string_view field);

/// Removes a trailing '\r' (CRLF input).
void strip_cr(std::string& line);

/// Removes a leading UTF-8 byte order mark.
void strip_bom(std::string& line);

std::string_view trim(std::string_view s);

bool is_valid_utf8(std::string_view s);
bool has_control_chars(std::string_view s);

/// Strict decimal parse: digits only, no sign, no overflow.
std::optional<std::uint64_t> parse_u64(std::string_view s);
std::optional<double> parse_double(std::string_view s);

/// printf("%.*g"); used for every number written to a results file so output
/// is byte-stable.
std::string format_g(double value, int significant = 10);

/// Rounds to `significant` digits and returns the double (for JSON reports).
double round_significant(double value, int significant);

std::string location(const std::string& source, std::size_t line_no);

}  // namespace listfair::detail
