#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "sharq/errors.hpp"

namespace sharq {

// Exact arbitrary-precision scalars. Rational keeps gcd(num, den) = 1 and
// den > 0 by construction, so structural equality is value equality.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact quotient with the sign moved into the numerator (the underlying
/// constructor insists on a positive denominator).
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) raise(Err::InvalidConfig, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

/// Parses "p" or "p/q" with optional leading sign; q must be positive.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        raise(Err::InvalidConfig, "malformed rational literal '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    size_t pos = 0;
    auto read_integer = [&](bool allow_sign) -> Integer {
        size_t start = pos;
        if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) fail();
        return Integer(std::string(text.substr(start, pos - start)));
    };

    Integer num = read_integer(true);
    Integer den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_integer(false);
        if (den == 0) fail();
    }
    if (pos != text.size()) fail();
    return Rational(num, den);
}

/// Renders as "p" when integral, else "p/q".
inline std::string format_rational(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

}  // namespace sharq
