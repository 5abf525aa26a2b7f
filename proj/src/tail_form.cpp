#include "lindyn/tail_form.hpp"

#include <algorithm>

namespace lindyn {

TailForm TailForm::geo(Rational a, Rational r) {
    if (a < 0 || r <= 0) throw std::invalid_argument("geo tail needs a >= 0, r > 0");
    if (a == 0) return zero();
    TailForm f;
    f.kind = Kind::Geo;
    f.coeff = std::move(a);
    f.ratio = std::move(r);
    return f;
}

TailForm TailForm::pow(Rational a, Rational s, Rational n0) {
    if (a < 0 || n0 < 0) throw std::invalid_argument("pow tail needs a >= 0, n0 >= 0");
    if (a == 0) return zero();
    if (s == 0) return geo(std::move(a), Rational(1));
    TailForm f;
    f.kind = Kind::Pow;
    f.coeff = std::move(a);
    f.expnt = std::move(s);
    f.offset = std::move(n0);
    return f;
}

CertReal TailForm::value(long long m, int prec_bits) const {
    if (m < 1) throw std::invalid_argument("tail value index starts at 1");
    switch (kind) {
        case Kind::Zero:
            return CertReal(Rational(0));
        case Kind::Geo:
            return CertReal(coeff * pow_int(ratio, m));
        case Kind::Pow:
            return CertReal(coeff) * pow_rational(offset + m, -expnt, prec_bits);
    }
    return CertReal(Rational(0));
}

TailForm TailForm::shifted(long long k) const {
    if (k < 0) throw std::invalid_argument("shift must be nonnegative");
    TailForm f = *this;
    if (kind == Kind::Geo) f.coeff = coeff * pow_int(ratio, k);
    if (kind == Kind::Pow) f.offset = offset + k;
    return f;
}

bool TailForm::summable() const {
    if (is_zero()) return true;
    if (kind == Kind::Geo) return ratio < 1;
    return expnt > 1;
}

bool TailForm::bounded_below() const {
    if (is_zero()) return false;
    if (kind == Kind::Geo) return ratio >= 1;
    return expnt <= 0;
}

CertReal TailForm::min_step_ratio_lower(int prec_bits) const {
    if (is_zero()) return CertReal(Rational(1));
    if (kind == Kind::Geo) return CertReal(ratio);
    if (expnt > 0) {
        // steps ((n0+m+1)/(n0+m))^{-s} increase toward 1; worst at m = 1
        return CertReal(pow_rational((offset + 2) / (offset + 1), -expnt, prec_bits).lower());
    }
    return CertReal(Rational(1));  // growing power: steps exceed 1
}

std::string TailForm::str() const {
    switch (kind) {
        case Kind::Zero:
            return "0";
        case Kind::Geo:
            return to_string(coeff) + " * (" + to_string(ratio) + ")^m";
        case Kind::Pow:
            return to_string(coeff) + " * (" + to_string(offset) + "+m)^(-" + to_string(expnt) + ")";
    }
    return "?";
}

TailSum sum_tail(const TailForm& f, int prec_bits) {
    TailSum out;
    if (f.is_zero()) {
        out.finite = true;
        out.total = CertReal(Rational(0));
        out.reason = "empty tail";
        return out;
    }
    if (f.kind == TailForm::Kind::Geo) {
        if (f.ratio < 1) {
            out.finite = true;
            out.total = CertReal(f.coeff * f.ratio / (1 - f.ratio));
            out.reason = "geometric tail";
        } else {
            out.reason = "geometric ratio >= 1";
        }
        return out;
    }
    if (f.expnt > 1) {
        // integral bounds: int_{n0+1}^inf A x^{-s} dx <= sum <= A(n0+1)^{-s} + int
        CertReal integral = CertReal(f.coeff) *
                            pow_rational(f.offset + 1, 1 - f.expnt, prec_bits) /
                            CertReal(f.expnt - 1);
        CertReal first = CertReal(f.coeff) * pow_rational(f.offset + 1, -f.expnt, prec_bits);
        out.finite = true;
        out.total = CertReal::from_bounds(integral.lower() < 0 ? Rational(0) : integral.lower(),
                                          (first + integral).upper());
        out.reason = "power tail, integral comparison";
        return out;
    }
    out.reason = "power exponent <= 1";
    return out;
}

namespace {

// asymptotic class rank: smaller rank is eventually smaller
int class_rank(const TailForm& f) {
    if (f.is_zero()) return 0;
    if (f.kind == TailForm::Kind::Geo) {
        if (f.ratio < 1) return 1;
        if (f.ratio == 1) return 3;
        return 5;
    }
    return f.expnt > 0 ? 2 : 4;
}

// Strict certified comparison value_a(m) < value_b(m); nullopt when the
// intervals keep overlapping at the precision cap.
std::optional<bool> strictly_less_at(const TailForm& a, const TailForm& b, long long m) {
    for (int prec = 96; prec <= 2048; prec *= 2) {
        CertReal va = a.value(m, prec), vb = b.value(m, prec);
        if (definitely_less(va, vb)) return true;
        if (definitely_leq(vb, va)) return false;
    }
    return std::nullopt;
}

// First anchor M >= start such that a(m) <= b(m) for all m >= M, given that
// a/b is nonincreasing from `start` on.
long long settle_from(const TailForm& a, const TailForm& b, long long start) {
    long long m = std::max<long long>(start, 1);
    for (int iter = 0; iter < 128; ++iter) {
        auto lt = strictly_less_at(a, b, m);
        if (lt.has_value() && *lt) return m;
        m = m < 2 ? 2 : m * 2;
        if (m > (1ll << 40)) break;
    }
    throw std::logic_error("tail comparison failed to settle: " + a.str() + " vs " + b.str());
}

long long ceil_to_ll(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int c = n / d;
    if (c * d < n) c += 1;
    return to_ll(c) < 1 ? 1 : to_ll(c);
}

}  // namespace

EventualCompare eventually_leq(const TailForm& a, const TailForm& b) {
    int ra = class_rank(a), rb = class_rank(b);
    if (ra != rb) {
        const TailForm& w = ra < rb ? a : b;
        const TailForm& l = ra < rb ? b : a;
        long long start = 1;
        // monotonicity threshold for decaying-geo vs decaying-pow:
        // step ratio r*(1+1/(n0+m))^s <= 1 from some computable m on; a
        // conservative integer exponent bound keeps the check exact.
        if (w.kind == TailForm::Kind::Geo && l.kind == TailForm::Kind::Pow && l.expnt > 0) {
            long long s_up = ceil_to_ll(l.expnt);
            long long m = 1;
            while (pow_int((l.offset + m + 1) / (l.offset + m), s_up) * w.ratio > 1) {
                m *= 2;
                if (m > (1ll << 40)) throw std::logic_error("no monotone region found");
            }
            start = m;
        }
        // growing power against growing geometric: w/l rises until
        // m ~ t/ln R - n0; ln R >= 1 - 1/R gives a rational threshold.
        if (w.kind == TailForm::Kind::Pow && w.expnt < 0 && l.kind == TailForm::Kind::Geo &&
            l.ratio > 1) {
            Rational t = -w.expnt;
            start = ceil_to_ll(t * l.ratio / (l.ratio - 1));
        }
        return {ra < rb, settle_from(w, l, start)};
    }
    // same class
    if (a.is_zero()) return {true, 1};
    if (a.kind == TailForm::Kind::Geo && b.kind == TailForm::Kind::Geo) {
        if (a.ratio == b.ratio) return {a.coeff <= b.coeff, 1};
        bool a_wins = a.ratio < b.ratio;
        const TailForm& w = a_wins ? a : b;
        const TailForm& l = a_wins ? b : a;
        return {a_wins, settle_from(w, l, 1)};
    }
    // both Pow with exponents of the same sign
    const TailForm& pa = a;
    const TailForm& pb = b;
    if (pa.expnt == pb.expnt && pa.coeff == pb.coeff && pa.offset == pb.offset) return {true, 1};
    bool a_wins;
    if (pa.expnt != pb.expnt) {
        a_wins = pa.expnt > 0 ? (pa.expnt > pb.expnt) : (abs_rat(pa.expnt) < abs_rat(pb.expnt));
    } else if (pa.coeff != pb.coeff) {
        a_wins = pa.coeff < pb.coeff;
    } else {
        // same coefficient and exponent: larger offset decays to smaller values
        a_wins = pa.expnt > 0 ? (pa.offset > pb.offset) : (pa.offset < pb.offset);
    }
    const TailForm& w = a_wins ? pa : pb;
    const TailForm& l = a_wins ? pb : pa;
    // log-derivative sign settles once m(s_w - s_l) >= s_l*n0_w - s_w*n0_l
    long long start = 1;
    if (w.expnt != l.expnt) {
        Rational thr = (l.expnt * w.offset - w.expnt * l.offset) / (w.expnt - l.expnt);
        if (thr > 0) start = ceil_to_ll(thr);
    }
    return {a_wins, settle_from(w, l, start)};
}

MinResult eventual_min(const std::vector<TailForm>& forms) {
    if (forms.empty()) throw std::invalid_argument("eventual_min of nothing");
    MinResult res{0, 1};
    for (size_t i = 1; i < forms.size(); ++i) {
        auto cmp = eventually_leq(forms[res.winner], forms[i]);
        if (!cmp.a_wins) res.winner = i;
    }
    // winner settled pairwise against everyone
    for (size_t i = 0; i < forms.size(); ++i) {
        if (i == res.winner) continue;
        auto cmp = eventually_leq(forms[res.winner], forms[i]);
        if (!cmp.a_wins) throw std::logic_error("eventual_min: order not total");
        res.from_m = std::max(res.from_m, cmp.from_m);
    }
    return res;
}

}  // namespace lindyn
