#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include "qospath/errors.hpp"

namespace qospath::detail {

inline double parse_number(const std::string& token, int line_no, const std::string& field) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("line " + std::to_string(line_no) + ": bad number for '" +
                         field + "': " + token);
    }
    return value;
}

inline long parse_integer(const std::string& token, int line_no, const std::string& field) {
    const char* begin = token.c_str();
    char* end = nullptr;
    long value = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ParseError("line " + std::to_string(line_no) + ": bad integer for '" +
                         field + "': " + token);
    }
    return value;
}

inline std::uint64_t parse_u64(const std::string& token, int line_no, const std::string& field) {
    const char* begin = token.c_str();
    char* end = nullptr;
    unsigned long long value = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || token[0] == '-') {
        throw ParseError("line " + std::to_string(line_no) + ": bad seed for '" +
                         field + "': " + token);
    }
    return static_cast<std::uint64_t>(value);
}

// "key=value" -> {key, value}.
inline std::pair<std::string, std::string> split_kv(const std::string& token, int line_no) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= token.size()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected key=value, got: " + token);
    }
    return {token.substr(0, eq), token.substr(eq + 1)};
}

// key=value with a fixed expected key.
inline double expect_kv(const std::string& token, const std::string& key, int line_no) {
    auto [name, value] = split_kv(token, line_no);
    if (name != key) {
        throw ParseError("line " + std::to_string(line_no) + ": expected '" + key +
                         "=<value>', got: " + token);
    }
    return parse_number(value, line_no, key);
}

}  // namespace qospath::detail
