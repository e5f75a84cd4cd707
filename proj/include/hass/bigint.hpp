#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <string>

#include "hass/errors.hpp"

namespace hass {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Lowercase hex without prefix; "0" for zero. The file formats use this
// encoding for every big integer.
inline std::string to_hex(const BigInt& v) {
    if (v < 0) throw InvalidArgument("to_hex: negative value");
    if (v == 0) return "0";
    std::string out;
    BigInt x = v;
    static const char* digits = "0123456789abcdef";
    while (x > 0) {
        out.push_back(digits[static_cast<unsigned>(x & 0xf)]);
        x >>= 4;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// Accepts lowercase/uppercase hex with optional 0x prefix.
inline BigInt from_hex(const std::string& s) {
    std::size_t start = 0;
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) start = 2;
    if (start >= s.size()) throw ParseError("from_hex: empty string");
    BigInt x = 0;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
        else if (c >= 'A' && c <= 'F') d = 10 + (c - 'A');
        else throw ParseError(std::string("from_hex: bad digit '") + c + "'");
        x = (x << 4) + d;
    }
    return x;
}

inline BigInt from_decimal(const std::string& s) {
    if (s.empty()) throw ParseError("from_decimal: empty string");
    BigInt x = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError(std::string("from_decimal: bad digit '") + c + "'");
        x = x * 10 + (c - '0');
    }
    return x;
}

} // namespace hass
