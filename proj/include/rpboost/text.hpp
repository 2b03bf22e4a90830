#pragma once

#include <charconv>
#include <string>

namespace rpboost {

/// Appends v in shortest round-trip decimal form. Every float this library
/// writes to a file goes through here, so parse-back is bit-exact.
inline void append_double(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.append(buf, ptr);
}

inline std::string double_str(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

}  // namespace rpboost
