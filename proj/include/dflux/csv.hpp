#ifndef DFLUX_CSV_HPP
#define DFLUX_CSV_HPP

#include <charconv>
#include <string>
#include <system_error>

#include "dflux/errors.hpp"

namespace dflux {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("cannot parse number '" + text + "'");
    }
    return v;
}

inline long parse_long(const std::string& text) {
    long v = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("cannot parse integer '" + text + "'");
    }
    return v;
}

} // namespace dflux

#endif
