#include "lindyn/cert_real.hpp"

#include <map>
#include <utility>

namespace lindyn {

CertReal CertReal::from_bounds(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("from_bounds: hi < lo");
    Rational m = (lo + hi) / 2;
    return CertReal(m, hi - m);
}

CertReal& CertReal::operator+=(const CertReal& o) {
    mid += o.mid;
    rad += o.rad;
    return *this;
}

CertReal& CertReal::operator-=(const CertReal& o) {
    mid -= o.mid;
    rad += o.rad;
    return *this;
}

CertReal& CertReal::operator*=(const CertReal& o) {
    Rational new_rad = abs_rat(mid) * o.rad + abs_rat(o.mid) * rad + rad * o.rad;
    mid *= o.mid;
    rad = new_rad;
    return *this;
}

CertReal& CertReal::operator/=(const CertReal& o) {
    Rational lo = o.lower(), hi = o.upper();
    if (lo <= 0 && hi >= 0) throw std::domain_error("division by interval containing zero");
    // Endpoint division; divisor is sign-definite.
    Rational a = lower(), b = upper();
    Rational c1 = a / lo, c2 = a / hi, c3 = b / lo, c4 = b / hi;
    Rational new_lo = std::min(std::min(c1, c2), std::min(c3, c4));
    Rational new_hi = std::max(std::max(c1, c2), std::max(c3, c4));
    *this = from_bounds(new_lo, new_hi);
    return *this;
}

CertReal operator+(CertReal a, const CertReal& b) { return a += b; }
CertReal operator-(CertReal a, const CertReal& b) { return a -= b; }
CertReal operator*(CertReal a, const CertReal& b) { return a *= b; }
CertReal operator/(CertReal a, const CertReal& b) { return a /= b; }

std::string CertReal::str(int digits) const {
    if (exact()) return to_decimal_string(mid, digits) + " (exact " + to_string(mid) + ")";
    return to_decimal_string(mid, digits) + " ± " + to_decimal_string(rad, digits);
}

namespace {

Rational pow2_neg(int bits) { return Rational(Int(1), Int(1) << bits); }

// Taylor sum of e^u for |u| <= 1/2 with remainder bound 2*|u|^(N+1)/(N+1)!.
CertReal exp_taylor_small(const Rational& u, const Rational& target_rad) {
    Rational term(1), sum(1);
    Rational abs_u = abs_rat(u);
    int n = 0;
    Rational tail_bound;
    while (true) {
        ++n;
        term *= u;
        term /= n;
        sum += term;
        tail_bound = abs_rat(term) * abs_u * 2 / (n + 1);
        if (tail_bound <= target_rad) break;
        if (n > 10000) throw std::logic_error("exp_taylor_small failed to converge");
    }
    return CertReal(sum, tail_bound);
}

CertReal exp_compute(const Rational& q, int prec_bits) {
    if (q == 0) return CertReal(Rational(1));
    if (q < 0) {
        // e^q = 1 / e^{-q}; widen the precision so the reciprocal stays sharp.
        CertReal pos = exp_compute(-q, prec_bits + 4);
        return CertReal(Rational(1)) / pos;
    }
    // Argument reduction: e^q = (e^{q/2^k})^{2^k} with q/2^k <= 1/2.
    int k = 0;
    Rational u = q;
    while (u > Rational(1, 2)) {
        u /= 2;
        ++k;
    }
    // Each squaring roughly doubles the absolute error relative to the value;
    // budget generously since all arithmetic here is exact rational.
    Rational target = pow2_neg(prec_bits + 2 * k + 8);
    CertReal r = exp_taylor_small(u, target);
    for (int i = 0; i < k; ++i) r *= r;
    return r;
}

struct ExpCacheEntry {
    int prec;
    CertReal value;
};

}  // namespace

CertReal exp_point(const Rational& q, int prec_bits) {
    thread_local std::map<Rational, ExpCacheEntry> cache;
    auto it = cache.find(q);
    if (it != cache.end() && it->second.prec >= prec_bits) return it->second.value;
    CertReal v = dyadic_round(exp_compute(q, prec_bits + 2), prec_bits + 2);
    cache[q] = {prec_bits, v};
    return v;
}

CertReal nth_root(const Rational& x, unsigned n, int prec_bits) {
    if (n == 0) throw std::invalid_argument("0th root");
    if (x < 0) throw std::domain_error("nth_root of negative rational");
    if (x == 0) return CertReal(Rational(0));
    if (n == 1) return CertReal(x);
    // Dyadic bisection keeps denominators small (powers of two times x's scale).
    Rational lo, hi;
    if (x >= 1) {
        lo = 1;
        hi = x;
    } else {
        lo = x;
        hi = 1;
    }
    auto pow_n = [n](const Rational& v) { return pow_int(v, static_cast<long long>(n)); };
    Rational width_target = pow2_neg(prec_bits);
    while (hi - lo > width_target) {
        Rational m = (lo + hi) / 2;
        if (pow_n(m) <= x)
            lo = m;
        else
            hi = m;
    }
    return CertReal::from_bounds(lo, hi);
}

CertReal pow_rational(const Rational& base, const Rational& e, int prec_bits) {
    if (base <= 0) throw std::domain_error("pow_rational requires positive base");
    if (e == 0) return CertReal(Rational(1));
    if (is_integer(e)) return CertReal(pow_int(base, to_ll(numerator(e))));
    // base^(num/den) = (base^num)^(1/den)
    long long num = to_ll(numerator(e));
    long long den = to_ll(denominator(e));
    bool invert = num < 0;
    Rational powed = pow_int(base, invert ? -num : num);
    CertReal root = nth_root(powed, static_cast<unsigned>(den), prec_bits + (invert ? 4 : 0));
    if (!invert) return root;
    return dyadic_round(CertReal(Rational(1)) / root, prec_bits + 2);
}

CertReal exp_interval(const CertReal& x, int prec_bits) {
    if (x.exact()) return exp_point(x.mid, prec_bits);
    CertReal lo = exp_point(x.lower(), prec_bits);
    CertReal hi = exp_point(x.upper(), prec_bits);
    return CertReal::from_bounds(lo.lower(), hi.upper());
}

CertReal dyadic_round(const CertReal& x, int bits) {
    if (x.exact() && denominator(x.mid) <= (Int(1) << bits)) return x;
    Int scale = Int(1) << bits;
    Rational lo = x.lower(), hi = x.upper();
    Int lo_n = numerator(lo) * scale / denominator(lo);
    if (Rational(lo_n, scale) > lo) lo_n -= 1;
    Int hi_n = numerator(hi) * scale / denominator(hi);
    if (Rational(hi_n, scale) < hi) hi_n += 1;
    return CertReal::from_bounds(Rational(lo_n, scale), Rational(hi_n, scale));
}

CertReal pow_cert(const CertReal& x, long long n) {
    if (n < 0) throw std::invalid_argument("pow_cert takes n >= 0");
    if (n == 0) return CertReal(Rational(1));
    if (x.lower() < 0) throw std::domain_error("pow_cert needs a nonnegative interval");
    return CertReal::from_bounds(pow_int(x.lower(), n), pow_int(x.upper(), n));
}

CertReal nth_root_interval(const CertReal& x, unsigned n, int prec_bits) {
    Rational lo = x.lower();
    if (lo < 0) lo = 0;
    CertReal rlo = nth_root(lo, n, prec_bits);
    CertReal rhi = nth_root(x.upper(), n, prec_bits);
    return CertReal::from_bounds(rlo.lower(), rhi.upper());
}

}  // namespace lindyn
