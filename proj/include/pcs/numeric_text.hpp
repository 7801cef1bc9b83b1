#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace pcs {

// Canonical text forms for numeric literals. Floats use the shortest decimal
// representation that round-trips to the identical bit pattern; non-finite
// values use the sentinel spellings NaN / Infinity / -Infinity.

std::string format_f64(double v);
std::string format_i64(std::int64_t v);

std::optional<double> parse_f64(const std::string& text);
std::optional<std::int64_t> parse_i64(const std::string& text);

bool bitwise_equal(double a, double b);

} // namespace pcs
