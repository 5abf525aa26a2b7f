#pragma once

#include "lindyn/rational.hpp"

#include <optional>
#include <string>

namespace lindyn {

// Certified real: rational midpoint plus rational radius. All operations keep
// the true value inside [mid - rad, mid + rad]; rational inputs stay exact
// (radius 0) until an irrational operation (exp, root) introduces width.
struct CertReal {
    Rational mid{0};
    Rational rad{0};

    CertReal() = default;
    CertReal(Rational m) : mid(std::move(m)) {}
    CertReal(Rational m, Rational r) : mid(std::move(m)), rad(std::move(r)) {
        if (rad < 0) rad = -rad;
    }
    static CertReal from_bounds(const Rational& lo, const Rational& hi);

    Rational lower() const { return mid - rad; }
    Rational upper() const { return mid + rad; }
    bool exact() const { return rad == 0; }

    CertReal operator-() const { return CertReal(-mid, rad); }
    CertReal& operator+=(const CertReal& o);
    CertReal& operator-=(const CertReal& o);
    CertReal& operator*=(const CertReal& o);
    CertReal& operator/=(const CertReal& o);

    std::string str(int digits = 12) const;
};

CertReal operator+(CertReal a, const CertReal& b);
CertReal operator-(CertReal a, const CertReal& b);
CertReal operator*(CertReal a, const CertReal& b);
CertReal operator/(CertReal a, const CertReal& b);

inline bool definitely_less(const CertReal& a, const CertReal& b) { return a.upper() < b.lower(); }
inline bool definitely_leq(const CertReal& a, const CertReal& b) { return a.upper() <= b.lower(); }
inline bool overlaps(const CertReal& a, const CertReal& b) {
    return !(definitely_less(a, b) || definitely_less(b, a));
}

// e^q for rational q, radius at most 2^-prec_bits. Results are memoized per
// thread keyed on (q, precision).
CertReal exp_point(const Rational& q, int prec_bits);

// n-th root of a nonnegative rational by dyadic bisection; radius < 2^-prec_bits.
CertReal nth_root(const Rational& x, unsigned n, int prec_bits);

// base^e for rational base > 0 and rational exponent; exact when e is an integer.
CertReal pow_rational(const Rational& base, const Rational& e, int prec_bits);

// Monotone extensions to intervals.
CertReal exp_interval(const CertReal& x, int prec_bits);
CertReal nth_root_interval(const CertReal& x, unsigned n, int prec_bits);

// x^n for intervals with positive lower bound (endpoint powers), n >= 0.
CertReal pow_cert(const CertReal& x, long long n);

// Outward rounding onto the 2^-bits grid. Certified primitives return dyadic
// bounds so that long accumulations keep power-of-two denominators.
CertReal dyadic_round(const CertReal& x, int bits);

}  // namespace lindyn
