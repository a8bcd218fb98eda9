#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace degradex {

// Shortest stable decimal rendering used in every CSV and text artifact
// ("%.12g"); identical inputs give identical bytes.
std::string format_double(double value);

// Quotes a field only when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace degradex
