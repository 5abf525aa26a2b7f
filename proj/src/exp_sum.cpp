#include "lindyn/exp_sum.hpp"

namespace lindyn {

ExpSum ExpSum::term(const Rational& coeff, const Rational& exponent) {
    ExpSum s;
    if (coeff != 0) s.terms_[exponent] = coeff;
    return s;
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
    for (const auto& [q, c] : o.terms_) {
        auto it = terms_.find(q);
        if (it == terms_.end()) {
            terms_.emplace(q, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) { return *this += -o; }

ExpSum ExpSum::operator-() const {
    ExpSum s;
    for (const auto& [q, c] : terms_) s.terms_[q] = -c;
    return s;
}

ExpSum ExpSum::scaled(const Rational& coeff, const Rational& shift) const {
    ExpSum s;
    if (coeff == 0) return s;
    for (const auto& [q, c] : terms_) s.terms_[q + shift] = c * coeff;
    return s;
}

CertReal ExpSum::eval(int prec_bits) const {
    CertReal acc(Rational(0));
    for (const auto& [q, c] : terms_) acc += CertReal(c) * exp_point(q, prec_bits);
    return acc;
}

int ExpSum::sign(int max_prec_bits) const {
    if (terms_.empty()) return 0;
    // factor out e^{q_min}: the sign is scale-free, so deep-tail sums decide
    // at low absolute precision
    ExpSum shifted = scaled(Rational(1), -terms_.begin()->first);
    for (int prec = 32; prec <= max_prec_bits; prec *= 2) {
        CertReal v = shifted.eval(prec);
        if (v.lower() > 0) return 1;
        if (v.upper() < 0) return -1;
    }
    throw std::logic_error("ExpSum::sign: could not separate from zero");
}

ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }

int compare(const ExpSum& a, const ExpSum& b, int max_prec_bits) {
    return (a - b).sign(max_prec_bits);
}

}  // namespace lindyn
