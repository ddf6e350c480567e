#pragma once

#include <string>
#include <string_view>

namespace ffadc {

// Parses "<number><prefix><unit>", e.g. "500fF", "100ps", "31.25mV", "1GHz".
// The unit must equal `base_unit` (prefixes f p n u µ m k M G T are accepted).
// A missing or different unit throws, except for a bare literal zero.
// The result is expressed in units of 10^target_exponent of the base unit
// (target_exponent = -6 with base "m" yields micrometres).
double parse_quantity(std::string_view text, std::string_view base_unit, int target_exponent = 0);

/// Shortest round-trip decimal followed by the base unit, no prefix.
std::string format_quantity(double value, std::string_view base_unit);

/// Plain number or percentage ("50%" -> 0.5).
double parse_fraction(std::string_view text);

std::string format_number(double value);

}  // namespace ffadc
