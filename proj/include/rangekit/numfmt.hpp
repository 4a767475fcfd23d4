#pragma once

#include <string>
#include <string_view>

namespace rangekit {

/// Shortest decimal string that parses back to exactly `value`.
/// Non-finite values render as "nan", "inf" and "-inf".
std::string format_double(double value);

/// Strict full-string parse; throws ValidationError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what = "number");

}  // namespace rangekit
