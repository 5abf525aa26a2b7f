#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lindyn {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(Int(num), Int(den));
}

// Integer power with exact rational result; e may be negative for nonzero base.
inline Rational pow_int(const Rational& base, long long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e > 0) return Rational(0);
        throw std::domain_error("0 raised to a negative power");
    }
    Rational acc(1), b = base;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1ull) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (e < 0) return Rational(1) / acc;
    return acc;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline long long to_ll(const Int& v) {
    if (v > Int((std::numeric_limits<long long>::max)()) ||
        v < Int((std::numeric_limits<long long>::min)()))
        throw std::overflow_error("integer out of long long range");
    return v.convert_to<long long>();
}

// Parses "num", "num/den" or a plain decimal like "-0.25".
inline Rational parse_rational(const std::string& s) {
    auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("cannot parse rational: '" + s + "'");
    };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw bad();
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(Int(s));
        std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
        if (frac.empty()) return Rational(Int(head));
        bool neg = !head.empty() && head[0] == '-';
        Int ipart(head.empty() || head == "-" ? "0" : head);
        Int fpart(frac);
        Int scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational r = Rational(abs(ipart), Int(1)) + Rational(fpart, scale);
        return neg || (ipart < 0) ? -r : r;
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        throw bad();
    }
}

inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Fixed-point decimal rendering (round toward zero), enough for CSV output.
inline std::string to_decimal_string(const Rational& q, int digits = 12) {
    Int num = numerator(q), den = denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    Int ip = num / den, rem = num % den;
    std::string out = (neg && (ip != 0 || rem != 0) ? "-" : "") + ip.str();
    if (digits <= 0) return out;
    out += '.';
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        Int d = rem / den;
        rem %= den;
        out += static_cast<char>('0' + d.convert_to<int>());
    }
    return out;
}

inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace lindyn
