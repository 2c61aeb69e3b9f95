#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmachine {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

// Exact rational value of a finite double (every finite double is rational).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num(scaled);
    BigInt den(1);
    if (exp >= 0) num <<= exp;
    else den <<= -exp;
    return Rational(num, den);
}

namespace detail {

// cpp_int reads a leading 0 as an octal prefix; strip it before parsing.
inline BigInt parse_bigint(std::string digits) {
    bool negative = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        negative = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("parse_rational: malformed integer part");
    }
    const auto first = digits.find_first_not_of('0');
    digits = (first == std::string::npos) ? "0" : digits.substr(first);
    BigInt value(digits);
    return negative ? -value : value;
}

} // namespace detail

// Parses "n/d", a decimal like "0.25" or "-1.5e-3", or a plain integer.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt num = detail::parse_bigint(text.substr(0, slash));
        const BigInt den = detail::parse_bigint(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in " + text);
        return Rational(num, den);
    }

    std::string body = text;
    int exp10 = 0;
    const auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stoi(body.substr(epos + 1));
        body = body.substr(0, epos);
    }
    const auto dot = body.find('.');
    std::string digits = body;
    if (dot != std::string::npos) {
        digits = body.substr(0, dot) + body.substr(dot + 1);
        exp10 -= static_cast<int>(body.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+") {
        throw std::invalid_argument("parse_rational: malformed number " + text);
    }
    BigInt num = detail::parse_bigint(digits);
    BigInt den(1);
    if (exp10 >= 0) {
        for (int i = 0; i < exp10; ++i) num *= 10;
    } else {
        for (int i = 0; i < -exp10; ++i) den *= 10;
    }
    return Rational(num, den);
}

inline double to_double(const Rational& r) {
    return static_cast<double>(boost::multiprecision::cpp_rational(r.numerator(), r.denominator()));
}

} // namespace qmachine
