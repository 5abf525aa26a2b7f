#pragma once

#include "lindyn/cert_real.hpp"

#include <map>

namespace lindyn {

// Exact finite sum  sum_i c_i * e^{q_i}  with rational c_i, q_i. Closed under
// addition, negation and scaling by c*e^q, which covers every measure
// computation for the exponential density: distinct rational exponents give
// linearly independent exponentials, so is_zero() is a syntactic check and
// sign() terminates for nonzero sums by interval refinement.
class ExpSum {
public:
    ExpSum() = default;
    explicit ExpSum(const Rational& constant) {
        if (constant != 0) terms_[Rational(0)] = constant;
    }
    static ExpSum term(const Rational& coeff, const Rational& exponent);

    ExpSum& operator+=(const ExpSum& o);
    ExpSum& operator-=(const ExpSum& o);
    ExpSum operator-() const;

    // Multiplies every term by coeff * e^{shift}.
    ExpSum scaled(const Rational& coeff, const Rational& shift = Rational(0)) const;

    bool is_zero() const { return terms_.empty(); }

    CertReal eval(int prec_bits) const;

    // -1, 0, +1; exact zero detected syntactically.
    int sign(int max_prec_bits = 4096) const;

    const std::map<Rational, Rational>& terms() const { return terms_; }

private:
    std::map<Rational, Rational> terms_;  // exponent -> coefficient
};

ExpSum operator+(ExpSum a, const ExpSum& b);
ExpSum operator-(ExpSum a, const ExpSum& b);

// compare(a,b) = sign(a-b)
int compare(const ExpSum& a, const ExpSum& b, int max_prec_bits = 4096);

}  // namespace lindyn
