#include "pcs/numeric_text.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <system_error>

namespace pcs {

std::string format_f64(double v) {
    if (std::isnan(v))
        return "NaN";
    if (std::isinf(v))
        return v > 0 ? "Infinity" : "-Infinity";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_i64(std::int64_t v) {
    return std::to_string(v);
}

std::optional<double> parse_f64(const std::string& text) {
    if (text == "NaN")
        return std::nan("");
    if (text == "Infinity")
        return HUGE_VAL;
    if (text == "-Infinity")
        return -HUGE_VAL;
    double out = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        return std::nullopt;
    return out;
}

std::optional<std::int64_t> parse_i64(const std::string& text) {
    std::int64_t out = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        return std::nullopt;
    return out;
}

bool bitwise_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // namespace pcs
