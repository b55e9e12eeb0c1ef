#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace qospath {

// Shortest decimal form that parses back to the same double.
// All file output goes through this so reruns are byte-identical.
inline std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace qospath
