#pragma once

#include "lindyn/cert_real.hpp"
#include "lindyn/errors.hpp"

#include <string>
#include <vector>

namespace lindyn {

// Closed form for a positive sequence beyond a window edge: value(m) for
// m = 1, 2, ... measured from the anchor. Coefficients are exact rationals;
// exponents may be non-integer rationals (values then evaluate to certified
// reals, comparisons refine until strict).
struct TailForm {
    enum class Kind { Zero, Geo, Pow };
    Kind kind = Kind::Zero;
    Rational coeff{0};   // A
    Rational ratio{1};   // Geo: value(m) = A * r^m
    Rational expnt{0};   // Pow: value(m) = A * (n0+m)^(-s);  s<0 grows
    Rational offset{0};  // Pow: n0 >= 0

    static TailForm zero() { return {}; }
    static TailForm geo(Rational a, Rational r);
    static TailForm pow(Rational a, Rational s, Rational n0);

    bool is_zero() const { return kind == Kind::Zero || coeff == 0; }
    CertReal value(long long m, int prec_bits = 96) const;
    // Anchor moved right by k: value'(m) = value(k+m).
    TailForm shifted(long long k) const;

    // True if value(m) -> 0 summably (geometric r<1 or power s>1).
    bool summable() const;
    // True if the terms do not tend to zero at all.
    bool bounded_below() const;

    // Certified lower bound for inf_m value(m+1)/value(m).
    CertReal min_step_ratio_lower(int prec_bits = 96) const;

    std::string str() const;
};

struct TailSum {
    bool finite = false;
    CertReal total;
    std::string reason;
};

// sum over m >= 1 of value(m)
TailSum sum_tail(const TailForm& f, int prec_bits = 96);

// Decides which form is eventually pointwise smaller and from which m on.
// Ties (identical asymptotic class and parameters) resolve in favor of `a`.
struct EventualCompare {
    bool a_wins = true;
    long long from_m = 1;
};
EventualCompare eventually_leq(const TailForm& a, const TailForm& b);

// Index of the eventually-minimal form plus the anchor offset from which it is
// pointwise minimal among all of them.
struct MinResult {
    size_t winner = 0;
    long long from_m = 1;
};
MinResult eventual_min(const std::vector<TailForm>& forms);

}  // namespace lindyn
