#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace storyflux::csv {

// Splits one CSV line. Double-quoted fields may contain commas and "" escapes;
// embedded newlines are not supported. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trippable decimal rendering, fixed across runs and platforms
// that share an IEEE-754 double.
std::string format_double(double value);

// Reads the header line and checks it against the expected column names.
// Trailing '\r' and a UTF-8 BOM are tolerated.
bool read_header(std::istream& in, const std::vector<std::string>& expected);

std::string_view trim(std::string_view s);

}  // namespace storyflux::csv
