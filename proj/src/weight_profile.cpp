#include "lindyn/weight_profile.hpp"

#include <algorithm>

namespace lindyn {

Rational ShiftBase::at(long long i) const {
    if (i < 0) throw OutOfDomain("shift base index must be >= 0");
    if (kind == Kind::Const) return value;
    return pattern[static_cast<size_t>(i % period())];
}

Rational ShiftBase::sup() const {
    if (kind == Kind::Const) return value;
    return *std::max_element(pattern.begin(), pattern.end());
}

Rational ShiftBase::period_product() const {
    if (kind == Kind::Const) return value;
    Rational q(1);
    for (const auto& v : pattern) q *= v;
    return q;
}

WeightProfile::WeightProfile(Data data, std::optional<TailCertificate> tail)
    : data_(std::move(data)), tail_(std::move(tail)) {
    validate();
    if (tail_) validate_tail_certificate();
}

WeightProfile WeightProfile::explicit_table(std::map<long long, Rational> w) {
    return WeightProfile(Explicit{std::move(w)});
}
WeightProfile WeightProfile::window(std::map<long long, Rational> w) {
    return WeightProfile(Window{std::move(w)});
}
WeightProfile WeightProfile::geometric(Rational a, Rational r) {
    return WeightProfile(Geometric{std::move(a), std::move(r)});
}
WeightProfile WeightProfile::two_sided(Rational a_pos, Rational r_pos, Rational a_neg,
                                       Rational r_neg, std::optional<Rational> w0) {
    Rational c0 = w0 ? *w0 : a_pos;
    return WeightProfile(TwoSided{std::move(c0), std::move(a_pos), std::move(r_pos),
                                  std::move(a_neg), std::move(r_neg)});
}
WeightProfile WeightProfile::power(Rational a, Rational s) {
    return WeightProfile(Power{std::move(a), std::move(s)});
}
WeightProfile WeightProfile::product_form(ShiftBase base, Rational p) {
    return WeightProfile(ProductForm{std::move(base), std::move(p)});
}

void WeightProfile::validate() const {
    auto positive = [](const Rational& q, const char* what) {
        if (q <= 0) throw InvalidSystem(std::string("weight profile requires positive ") + what);
    };
    if (auto* e = std::get_if<Explicit>(&data_)) {
        if (e->w.empty()) throw InvalidSystem("explicit profile is empty");
        for (const auto& [n, v] : e->w) positive(v, "table entries");
    } else if (auto* e2 = std::get_if<Window>(&data_)) {
        if (e2->w.empty()) throw InvalidSystem("window profile is empty");
        for (const auto& [n, v] : e2->w) positive(v, "table entries");
    } else if (auto* g = std::get_if<Geometric>(&data_)) {
        positive(g->a, "a");
        positive(g->r, "r");
    } else if (auto* t = std::get_if<TwoSided>(&data_)) {
        positive(t->c0, "w0");
        positive(t->cp, "a_pos");
        positive(t->rp, "r_pos");
        positive(t->cm, "a_neg");
        positive(t->rm, "r_neg");
    } else if (auto* p = std::get_if<Power>(&data_)) {
        positive(p->a, "a");
    } else if (auto* pf = std::get_if<ProductForm>(&data_)) {
        if (pf->p < 1) throw InvalidSystem("product form requires p >= 1");
        if (pf->base.kind == ShiftBase::Kind::Const) {
            positive(pf->base.value, "base value");
        } else {
            if (pf->base.pattern.empty()) throw InvalidSystem("empty base pattern");
            for (const auto& v : pf->base.pattern) positive(v, "base pattern entries");
        }
    }
}

void WeightProfile::validate_tail_certificate() const {
    const auto& tc = *tail_;
    if (tc.r >= 1 || tc.r <= 0 || tc.c <= 0 || tc.n0 < 0)
        throw InvalidSystem("tail certificate requires 0 < r < 1, c > 0, n0 >= 0");
    auto fail = []() { throw InvalidSystem("tail certificate bound does not hold for this family"); };
    if (auto* e = std::get_if<Explicit>(&data_)) {
        for (const auto& [n, v] : e->w) {
            long long an = n < 0 ? -n : n;
            if (an >= tc.n0 && v > tc.c * pow_int(tc.r, an)) fail();
        }
    } else if (std::get_if<Window>(&data_)) {
        fail();  // no closed form beyond the data
    } else if (auto* g = std::get_if<Geometric>(&data_)) {
        if (g->r > tc.r) fail();
        if (g->a * pow_int(g->r / tc.r, tc.n0) > tc.c) fail();
    } else if (auto* t = std::get_if<TwoSided>(&data_)) {
        if (t->rp > tc.r || t->rm > tc.r) fail();
        long long n1 = std::max<long long>(tc.n0, 1);
        if (t->cp * pow_int(t->rp / tc.r, n1) > tc.c) fail();
        if (t->cm * pow_int(t->rm / tc.r, n1) > tc.c) fail();
        if (tc.n0 == 0 && t->c0 > tc.c) fail();
    } else if (std::get_if<Power>(&data_)) {
        fail();  // polynomial decay never admits a geometric bound
    } else if (auto* pf = std::get_if<ProductForm>(&data_)) {
        // w_n <= c r^n needs every one-period product ratio to beat r.
        if (!is_integer(pf->p)) fail();
        long long L = pf->base.period();
        Rational step = pow_int(pow_int(pf->base.period_product(), to_ll(numerator(pf->p))), -1);
        if (step > pow_int(tc.r, L)) fail();
        // one full period of offsets past n0, the ratio check covers the rest
        Rational prod(1);
        for (long long i = 0; i < tc.n0 + L; ++i) {
            prod *= pf->base.at(i);
            if (i >= tc.n0) {
                Rational w = pow_int(prod, -to_ll(numerator(pf->p)));
                if (w > tc.c * pow_int(tc.r, i)) fail();
            }
        }
    }
}

ProfileDomain WeightProfile::domain() const {
    if (std::get_if<Explicit>(&data_) || std::get_if<Window>(&data_)) return ProfileDomain::FiniteWindow;
    if (std::get_if<ProductForm>(&data_)) return ProfileDomain::ForwardN;
    return ProfileDomain::AllZ;
}

bool WeightProfile::in_domain(long long n) const {
    switch (domain()) {
        case ProfileDomain::AllZ:
            return true;
        case ProfileDomain::ForwardN:
            return n >= 0;
        case ProfileDomain::FiniteWindow: {
            const std::map<long long, Rational>* w = nullptr;
            if (auto* e = std::get_if<Explicit>(&data_)) w = &e->w;
            if (auto* v = std::get_if<Window>(&data_)) w = &v->w;
            return w->count(n) > 0;
        }
    }
    return false;
}

bool WeightProfile::exact_values() const {
    if (auto* p = std::get_if<Power>(&data_)) return is_integer(p->s);
    if (auto* pf = std::get_if<ProductForm>(&data_)) return is_integer(pf->p);
    return true;
}

std::optional<Rational> WeightProfile::weight_exact(long long n) const {
    if (!in_domain(n)) throw OutOfDomain("weight index outside profile domain: n=" + std::to_string(n));
    if (auto* e = std::get_if<Explicit>(&data_)) return e->w.at(n);
    if (auto* v = std::get_if<Window>(&data_)) return v->w.at(n);
    if (auto* g = std::get_if<Geometric>(&data_)) return g->a * pow_int(g->r, n < 0 ? -n : n);
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        if (n == 0) return t->c0;
        if (n > 0) return t->cp * pow_int(t->rp, n);
        return t->cm * pow_int(t->rm, -n);
    }
    if (auto* p = std::get_if<Power>(&data_)) {
        if (!is_integer(p->s)) return std::nullopt;
        return p->a * pow_int(Rational(1 + (n < 0 ? -n : n)), -to_ll(numerator(p->s)));
    }
    if (auto* pf = std::get_if<ProductForm>(&data_)) {
        if (!is_integer(pf->p)) return std::nullopt;
        Rational prod(1);
        for (long long i = 0; i <= n; ++i) prod *= pf->base.at(i);
        return pow_int(prod, -to_ll(numerator(pf->p)));
    }
    return std::nullopt;
}

CertReal WeightProfile::weight(long long n, int prec_bits) const {
    if (auto v = weight_exact(n)) return CertReal(*v);
    if (auto* p = std::get_if<Power>(&data_)) {
        Rational base(1 + (n < 0 ? -n : n));
        return CertReal(p->a) * pow_rational(base, -p->s, prec_bits);
    }
    auto* pf = std::get_if<ProductForm>(&data_);
    Rational prod(1);
    for (long long i = 0; i <= n; ++i) prod *= pf->base.at(i);
    return pow_rational(prod, -pf->p, prec_bits);
}

Rational geometric_block_sum(const Rational& a, const Rational& r, long long count) {
    if (count <= 0) return Rational(0);
    if (r == 1) return a * count;
    return a * (1 - pow_int(r, count)) / (1 - r);
}

CertReal WeightProfile::partial_sum(long long lo, long long hi, int prec_bits) const {
    if (lo > hi) throw OutOfDomain("partial_sum requires lo <= hi");
    if (!in_domain(lo) || !in_domain(hi))
        throw OutOfDomain("partial_sum range leaves the profile domain");
    if (auto* g = std::get_if<Geometric>(&data_)) {
        Rational acc(0);
        if (hi < 0 || lo >= 0) {
            // single-sign block: |n| runs monotonically
            long long a0 = std::min(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
            Rational first = g->a * pow_int(g->r, a0);
            acc = geometric_block_sum(first, g->r, hi - lo + 1);
        } else {
            acc = geometric_block_sum(g->a * pow_int(g->r, 1), g->r, -lo);  // lo..-1
            acc += geometric_block_sum(g->a, g->r, hi + 1);                 // 0..hi
        }
        return CertReal(acc);
    }
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        Rational acc(0);
        if (lo <= -1) {
            long long upper_neg = std::min<long long>(hi, -1);
            acc += geometric_block_sum(t->cm * pow_int(t->rm, -upper_neg), t->rm, upper_neg - lo + 1);
        }
        if (lo <= 0 && hi >= 0) acc += t->c0;
        if (hi >= 1) {
            long long lower_pos = std::max<long long>(lo, 1);
            acc += geometric_block_sum(t->cp * pow_int(t->rp, lower_pos), t->rp, hi - lower_pos + 1);
        }
        return CertReal(acc);
    }
    if (std::get_if<Explicit>(&data_) || std::get_if<Window>(&data_)) {
        const std::map<long long, Rational>& w =
            std::get_if<Explicit>(&data_) ? std::get<Explicit>(data_).w : std::get<Window>(data_).w;
        Rational acc(0);
        for (long long n = lo; n <= hi; ++n) acc += w.at(n);
        return CertReal(acc);
    }
    // Power / ProductForm: term-by-term. Dyadic rounding keeps denominators
    // bounded on long power-law ranges.
    long long count = hi - lo + 1;
    if (count > (1ll << 22)) throw OutOfDomain("partial_sum range too long for term-by-term family");
    bool round_dyadic = count > 4096;
    Rational grid = Rational(Int(1), Int(1) << 40);
    CertReal acc{Rational(0)};
    for (long long n = lo; n <= hi; ++n) {
        CertReal w = weight(n, prec_bits);
        if (round_dyadic) {
            Rational m = w.mid;
            Int q = numerator(m) * (Int(1) << 40) / denominator(m);
            w = CertReal(Rational(q, Int(1) << 40), w.rad + grid);
        }
        acc += w;
    }
    return acc;
}

SummabilityResult WeightProfile::certify_summability(int prec_bits) const {
    SummabilityResult res;
    if (auto* e = std::get_if<Explicit>(&data_)) {
        Rational acc(0);
        for (const auto& [n, v] : e->w) acc += v;
        res.verdict = Summability::Summable;
        res.total = CertReal(acc);
        res.reason = "finite domain";
        return res;
    }
    if (std::get_if<Window>(&data_)) {
        res.verdict = Summability::Undecided;
        res.reason = "window profile carries no information beyond its data range";
        return res;
    }
    if (auto* g = std::get_if<Geometric>(&data_)) {
        if (g->r < 1) {
            res.verdict = Summability::Summable;
            res.total = CertReal(g->a * (1 + g->r) / (1 - g->r));
            res.reason = "geometric ratio < 1";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = "terms bounded below by a = " + to_string(g->a);
        }
        return res;
    }
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        if (t->rp < 1 && t->rm < 1) {
            Rational total = t->c0 + t->cp * t->rp / (1 - t->rp) + t->cm * t->rm / (1 - t->rm);
            res.verdict = Summability::Summable;
            res.total = CertReal(total);
            res.reason = "geometric ratios < 1 on both sides";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = std::string("nonvanishing terms on the ") + (t->rp >= 1 ? "positive" : "negative") + " side";
        }
        return res;
    }
    if (auto* p = std::get_if<Power>(&data_)) {
        if (p->s > 1) {
            // head |n| <= 64 plus integral-test tails
            CertReal head = partial_sum(-64, 64, prec_bits);
            CertReal tail = tail_bound_pos(64, prec_bits) + tail_bound_neg(64, prec_bits);
            Rational hi = head.upper() + tail.upper();
            res.verdict = Summability::Summable;
            res.total = CertReal::from_bounds(head.lower(), hi);
            res.reason = "power-law exponent s > 1 via integral comparison";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = "power-law exponent s <= 1: comparison with the harmonic series";
        }
        return res;
    }
    auto* pf = std::get_if<ProductForm>(&data_);
    Rational q = pf->base.period_product();
    long long L = pf->base.period();
    if (q > 1) {
        // sum_{n>=0} (v_0..v_n)^{-p} split into L residue classes, each geometric
        // with ratio q^{-p}.
        CertReal ratio = pow_rational(q, -pf->p, prec_bits);
        CertReal block{Rational(0)};
        Rational prod(1);
        for (long long j = 0; j < L; ++j) {
            prod *= pf->base.at(j);
            block += pow_rational(prod, -pf->p, prec_bits);
        }
        CertReal total = block / (CertReal(Rational(1)) - ratio);
        res.verdict = Summability::Summable;
        res.total = total;
        res.reason = "period product > 1 gives geometric decay";
    } else {
        res.verdict = Summability::Divergent;
        res.reason = q == 1 ? "partial products are periodic, terms bounded below"
                            : "period product < 1, terms grow";
    }
    return res;
}

CertReal WeightProfile::tail_bound_pos(long long window_n, int prec_bits) const {
    if (window_n < 0) throw std::invalid_argument("tail bounds require window_n >= 0");
    if (auto* e = std::get_if<Explicit>(&data_)) {
        Rational acc(0);
        for (const auto& [n, v] : e->w)
            if (n > window_n) acc += v;
        return CertReal(acc);
    }
    if (std::get_if<Window>(&data_)) throw TailNotCertified("window profile has no tail bound");
    if (auto* g = std::get_if<Geometric>(&data_)) {
        if (g->r >= 1) throw TailNotCertified("divergent geometric tail");
        long long a0 = window_n >= 0 ? window_n + 1 : 0;
        return CertReal(g->a * pow_int(g->r, a0) / (1 - g->r));
    }
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        if (t->rp >= 1) throw TailNotCertified("divergent positive tail");
        long long a0 = std::max<long long>(window_n + 1, 1);
        return CertReal(t->cp * pow_int(t->rp, a0) / (1 - t->rp));
    }
    if (auto* p = std::get_if<Power>(&data_)) {
        if (p->s <= 1) throw TailNotCertified("divergent power tail");
        // sum_{n > N} a (1+n)^{-s} <= a * (1+N)^{1-s} / (s-1)
        Rational base(1 + std::max<long long>(window_n, 0));
        CertReal bound = CertReal(p->a) * pow_rational(base, 1 - p->s, prec_bits) /
                         CertReal(p->s - 1);
        return CertReal::from_bounds(Rational(0), bound.upper());
    }
    auto* pf = std::get_if<ProductForm>(&data_);
    Rational q = pf->base.period_product();
    if (q <= 1) throw TailNotCertified("divergent product-form tail");
    long long L = pf->base.period();
    long long start = std::max<long long>(window_n + 1, 0);
    // one period of leading terms, then geometric ratio q^{-p} per period
    CertReal ratio = pow_rational(q, -pf->p, prec_bits);
    CertReal block{Rational(0)};
    for (long long j = start; j < start + L; ++j) block += weight(j, prec_bits);
    CertReal total = block / (CertReal(Rational(1)) - ratio);
    return CertReal::from_bounds(Rational(0), total.upper());
}

CertReal WeightProfile::tail_bound_neg(long long window_n, int prec_bits) const {
    if (window_n < 0) throw std::invalid_argument("tail bounds require window_n >= 0");
    if (auto* e = std::get_if<Explicit>(&data_)) {
        Rational acc(0);
        for (const auto& [n, v] : e->w)
            if (n < -window_n) acc += v;
        return CertReal(acc);
    }
    if (std::get_if<Window>(&data_)) throw TailNotCertified("window profile has no tail bound");
    if (std::get_if<ProductForm>(&data_)) return CertReal(Rational(0));  // empty side
    if (auto* g = std::get_if<Geometric>(&data_)) {
        if (g->r >= 1) throw TailNotCertified("divergent geometric tail");
        long long a0 = window_n >= 0 ? window_n + 1 : 0;
        return CertReal(g->a * pow_int(g->r, a0) / (1 - g->r));
    }
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        if (t->rm >= 1) throw TailNotCertified("divergent negative tail");
        long long a0 = std::max<long long>(window_n + 1, 1);
        return CertReal(t->cm * pow_int(t->rm, a0) / (1 - t->rm));
    }
    auto* p = std::get_if<Power>(&data_);
    if (p->s <= 1) throw TailNotCertified("divergent power tail");
    Rational base(1 + std::max<long long>(window_n, 0));
    CertReal bound = CertReal(p->a) * pow_rational(base, 1 - p->s, prec_bits) / CertReal(p->s - 1);
    return CertReal::from_bounds(Rational(0), bound.upper());
}

CertReal WeightProfile::tail_bound(long long window_n, int prec_bits) const {
    return tail_bound_pos(window_n, prec_bits) + tail_bound_neg(window_n, prec_bits);
}

WeightProfile::RatioBound WeightProfile::sup_step_ratio(int step) const {
    if (step != 1 && step != -1) throw std::invalid_argument("step must be +1 or -1");
    RatioBound out{CertReal(Rational(1))};
    if (auto* g = std::get_if<Geometric>(&data_)) {
        out.value = CertReal(std::max(g->r, Rational(1) / g->r));
        out.witness = "geometric arms";
        return out;
    }
    if (auto* t = std::get_if<TwoSided>(&data_)) {
        // ratios: inside arms 1/rp (or rp), rm (or 1/rm); junctions at 0
        Rational v;
        if (step == -1) {
            v = std::max(Rational(Rational(1) / t->rp), t->rm);
            v = std::max(v, Rational(t->cm * t->rm / t->c0));   // w_{-1}/w_0
            v = std::max(v, Rational(t->c0 / (t->cp * t->rp))); // w_0/w_1
        } else {
            v = std::max(t->rp, Rational(Rational(1) / t->rm));
            v = std::max(v, Rational(t->cp * t->rp / t->c0));   // w_1/w_0
            v = std::max(v, Rational(t->c0 / (t->cm * t->rm))); // w_0/w_{-1}
        }
        out.value = CertReal(v);
        return out;
    }
    if (auto* p = std::get_if<Power>(&data_)) {
        // sup ((1+|n|)/(1+|n+-1|))^s attained next to the apex
        Rational s_abs = abs_rat(p->s);
        out.value = pow_rational(Rational(2), s_abs, 96);
        return out;
    }
    if (auto* pf = std::get_if<ProductForm>(&data_)) {
        if (step == -1) {
            out.value = pow_rational(pf->base.sup(), pf->p, 96);  // w_{i-1}/w_i = v_i^p
        } else {
            Rational inf_v = pf->base.kind == ShiftBase::Kind::Const
                                 ? pf->base.value
                                 : *std::min_element(pf->base.pattern.begin(), pf->base.pattern.end());
            out.value = pow_rational(Rational(1) / inf_v, pf->p, 96);
        }
        return out;
    }
    if (auto* e = std::get_if<Explicit>(&data_)) {
        Rational best(0);
        for (const auto& [n, v] : e->w) {
            auto it = e->w.find(n + step);
            if (it != e->w.end()) best = std::max(best, Rational(it->second / v));
        }
        out.value = CertReal(best == 0 ? Rational(1) : best);
        return out;
    }
    // Window: exact within data, nothing known beyond.
    auto* w = std::get_if<Window>(&data_);
    Rational best(0);
    for (const auto& [n, v] : w->w) {
        auto it = w->w.find(n + step);
        if (it != w->w.end()) best = std::max(best, Rational(it->second / v));
    }
    out.value = CertReal(best == 0 ? Rational(1) : best);
    out.undecided = true;
    out.witness = "window profile: ratio beyond the data range is unknown";
    return out;
}

WeightProfile WeightProfile::reversed() const {
    if (auto* g = std::get_if<Geometric>(&data_)) return geometric(g->a, g->r);
    if (auto* t = std::get_if<TwoSided>(&data_))
        return WeightProfile(TwoSided{t->c0, t->cm, t->rm, t->cp, t->rp});
    if (auto* p = std::get_if<Power>(&data_)) return power(p->a, p->s);
    if (auto* e = std::get_if<Explicit>(&data_)) {
        std::map<long long, Rational> w;
        for (const auto& [n, v] : e->w) w[-n] = v;
        return explicit_table(std::move(w));
    }
    if (auto* v = std::get_if<Window>(&data_)) {
        std::map<long long, Rational> w;
        for (const auto& [n, val] : v->w) w[-n] = val;
        return window(std::move(w));
    }
    throw UnsupportedCombination("product-form profiles are forward-only and cannot be reversed");
}

}  // namespace lindyn
