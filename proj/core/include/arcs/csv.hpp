#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace arcs {

/// Shortest round-trip decimal form of `v`.
std::string format_number(double v);
/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace arcs
