#include "lindyn/affine.hpp"

#include <algorithm>
#include <random>

namespace lindyn::affine {

ExpSum distribution_value(const Rational& t) {
    if (t <= 0) return ExpSum::term(Rational(1, 2), t);
    ExpSum s(Rational(1));
    s += ExpSum::term(Rational(-1, 2), -t);
    return s;
}

ExpSum ray_measure_above(const Rational& t) {
    ExpSum s(Rational(1));
    s -= distribution_value(t);
    return s;
}

ExpSum ray_measure_below(const Rational& t) { return distribution_value(t); }

IntervalSet::IntervalSet(std::vector<Interval> parts) {
    for (auto& p : parts) {
        if (p.hi < p.lo) throw std::invalid_argument("interval with hi < lo");
        if (p.hi > p.lo) parts_.push_back(p);  // single points carry no measure
    }
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const auto& p : parts_) {
        if (!merged.empty() && p.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, p.hi);
        else
            merged.push_back(p);
    }
    parts_ = std::move(merged);
}

IntervalSet IntervalSet::of(Rational lo, Rational hi) {
    return IntervalSet({Interval{std::move(lo), std::move(hi)}});
}

Rational IntervalSet::total_length() const {
    Rational len(0);
    for (const auto& p : parts_) len += p.hi - p.lo;
    return len;
}

ExpSum IntervalSet::measure_sum() const {
    ExpSum acc;
    for (const auto& p : parts_) {
        acc += distribution_value(p.hi);
        acc -= distribution_value(p.lo);
    }
    return acc;
}

CertReal IntervalSet::measure(int prec_bits) const { return measure_sum().eval(prec_bits); }

IntervalSet IntervalSet::subtract(const Interval& cut) const {
    std::vector<Interval> out;
    for (const auto& p : parts_) {
        if (cut.hi <= p.lo || cut.lo >= p.hi) {
            out.push_back(p);
            continue;
        }
        if (cut.lo > p.lo) out.push_back({p.lo, cut.lo});
        if (cut.hi < p.hi) out.push_back({cut.hi, p.hi});
    }
    return IntervalSet(std::move(out));
}

AffineMap::AffineMap(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a == 0 || abs_rat(a) > 1)
        throw std::invalid_argument("affine map requires 0 < |a| <= 1");
    if (a == 1 && b == 0) throw std::invalid_argument("the identity map is excluded");
}

Interval AffineMap::image(const Interval& j) const {
    Rational x = apply(j.lo), y = apply(j.hi);
    if (x <= y) return {x, y};
    return {y, x};
}

IntervalSet AffineMap::image(const IntervalSet& s) const {
    std::vector<Interval> parts;
    for (const auto& p : s.parts()) parts.push_back(image(p));
    return IntervalSet(std::move(parts));
}

Interval AffineMap::iterate(const Interval& j, long long n) const {
    // f^n(x) = a^n x + b (a^n - 1)/(a - 1) for a != 1; x + n b for a = 1
    Rational an, shift;
    if (a == 1) {
        an = 1;
        shift = b * n;
    } else {
        an = pow_int(a, n);
        shift = b * (an - 1) / (a - 1);
    }
    Rational x = an * j.lo + shift, y = an * j.hi + shift;
    if (x <= y) return {x, y};
    return {y, x};
}

std::optional<Rational> AffineMap::fixed_point() const {
    if (a == 1) return std::nullopt;
    return b / (1 - a);
}

StarCheckReport star_bound_check(const AffineMap& f, long long trials, unsigned long long seed) {
    StarCheckReport rep;
    rep.trials = trials;
    Rational abs_a = abs_rat(f.a), abs_b = abs_rat(f.b);
    rep.bound = CertReal(abs_a) * exp_point(-abs_b, 96);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> num(-120, 120);
    std::uniform_int_distribution<long long> den(1, 8);
    std::uniform_int_distribution<long long> len_num(1, 64);

    bool first = true;
    for (long long t = 0; t < trials; ++t) {
        Rational lo(num(rng), den(rng));
        Rational len(len_num(rng), den(rng));
        Interval j{lo, lo + len};
        ExpSum mu_j = IntervalSet({j}).measure_sum();
        ExpSum mu_fj = IntervalSet({f.image(j)}).measure_sum();
        // margin = mu(fJ) - |a| e^{-|b|} mu(J), exact exponential sum
        ExpSum margin = mu_fj - mu_j.scaled(abs_a, -abs_b);
        int sign = margin.sign();
        if (sign < 0) ++rep.violations;
        if (sign == 0) ++rep.exact_equalities;

        // refine until the denominator interval clears zero and, for positive
        // margins, until the certified quotient margin does too
        CertReal ratio;
        Rational mlow(0);
        for (int prec = 96; prec <= 4096; prec *= 2) {
            CertReal denom = mu_j.eval(prec);
            if (denom.lower() <= 0) continue;
            ratio = mu_fj.eval(prec) / denom;
            if (sign == 0) break;
            CertReal bound_p = CertReal(abs_a) * exp_point(-abs_b, prec);
            mlow = (ratio - bound_p).lower();
            if (sign > 0 && mlow > 0) break;
            if (sign < 0 && (ratio - bound_p).upper() < 0) {
                mlow = (ratio - bound_p).lower();
                break;
            }
        }
        if (first || ratio.mid < rep.min_ratio.mid) rep.min_ratio = ratio;
        if (first || mlow < rep.min_margin_lower) rep.min_margin_lower = mlow;
        first = false;
    }
    return rep;
}

RecurrenceReport recurrent_set(const AffineMap& f) {
    RecurrenceReport rep;
    if (f.is_involution()) {
        rep.kind = RecurrentKind::AllOfR;  // every point is 2-periodic
        return rep;
    }
    if (f.is_translation()) {
        rep.kind = RecurrentKind::Empty;  // b != 0: orbits march off to infinity
        return rep;
    }
    rep.kind = RecurrentKind::SinglePoint;
    rep.fixed_point = f.fixed_point();
    return rep;
}

namespace {

// Dyadic radius whose symmetric cut around x* removes measure < eps/2.
Rational pick_delta(const Rational& center, const Rational& eps) {
    Rational delta(1, 2);
    for (int k = 0; k < 256; ++k) {
        ExpSum removed = distribution_value(center + delta) - distribution_value(center - delta);
        ExpSum gap = removed - ExpSum(eps / 2);
        if (gap.sign() < 0) return delta;
        delta /= 2;
    }
    throw std::logic_error("could not place the fixed-point cut");
}

}  // namespace

ScWitnessReport sc_witness(const AffineMap& f, const IntervalSet& b, const Rational& eps,
                           long long head_n) {
    if (f.is_involution())
        throw InvolutionUnsupported(
            "a = -1 makes every point 2-periodic; the recurrent set has full measure and the "
            "zero-measure-recurrence route does not apply");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (b.empty()) throw std::invalid_argument("B must have positive measure");

    ScWitnessReport rep;
    IntervalSet b_prime = b;
    rep.delta = Rational(0);
    if (auto xstar = f.fixed_point()) {
        // drop a dyadic neighborhood of the fixed point if B meets it
        Rational d0 = pick_delta(*xstar, eps);
        IntervalSet cut = b.subtract(Interval{*xstar - d0, *xstar + d0});
        if (!(cut.total_length() == b.total_length())) {
            b_prime = cut;
            rep.delta = d0;
        }
    }
    rep.b_prime = b_prime;
    {
        ExpSum removed = b.measure_sum() - b_prime.measure_sum();
        rep.removed_measure = removed.is_zero() ? CertReal(Rational(0)) : removed.eval(96);
    }
    if (b_prime.empty()) throw std::logic_error("cut removed all of B");

    // geometry of B'
    Rational lo = b_prime.parts().front().lo, hi = b_prime.parts().back().hi;
    Rational len = b_prime.total_length();

    long long n_eff = head_n;
    CertReal tail{Rational(0)};
    if (f.is_translation()) {
        Rational abs_b = abs_rat(f.b);
        // push the window until the translated copies are clear of the origin
        while (true) {
            Rational reach = abs_b * n_eff;
            if (reach > abs_rat(lo) && reach > abs_rat(hi)) break;
            ++n_eff;
        }
        // |n| > n_eff: mu(B' + n b) <= (len/2) e^{-(|n| |b| - max(|lo|,|hi|))}
        Rational offset = std::max(abs_rat(lo), abs_rat(hi));
        CertReal ratio = exp_point(-abs_b, 128);
        CertReal scale = CertReal(len / 2) * exp_point(offset, 128);
        // two sides: 2 * scale * ratio^{n_eff+1} / (1 - ratio)
        CertReal geom = scale * CertReal(Rational(2)) *
                        pow_cert(ratio, n_eff + 1) / (CertReal(Rational(1)) - ratio);
        tail = CertReal::from_bounds(Rational(0), geom.upper());
    } else {
        Rational xstar = *f.fixed_point();
        Rational abs_a = abs_rat(f.a);
        // forward: images contract toward x*; mu(f^n B') <= reach * |a|^n
        Rational reach = std::max(abs_rat(lo - xstar), abs_rat(hi - xstar));
        Rational fwd_bound = reach * pow_int(abs_a, n_eff + 1) / (1 - abs_a);
        // backward: points stay delta_min away from x*, preimages escape
        Rational delta_min;
        {
            Rational best(-1);
            for (const auto& p : b_prime.parts()) {
                Rational d1 = abs_rat(p.lo - xstar), d2 = abs_rat(p.hi - xstar);
                Rational dmin = (p.lo <= xstar && xstar <= p.hi) ? Rational(0) : std::min(d1, d2);
                if (best < 0 || dmin < best) best = dmin;
            }
            delta_min = best;
        }
        if (delta_min <= 0)
            throw std::logic_error("B' still touches the fixed point");
        // m0 with delta_min |a|^{-m} >= |x*| + m + 1 for all m >= m0: once the
        // inequality holds and the geometric increment exceeds 1, it persists
        long long m0 = 1;
        while (true) {
            Rational lhs = delta_min * pow_int(abs_a, -m0);
            bool holds = lhs >= abs_rat(xstar) + m0 + 1;
            bool increment = lhs * (1 / abs_a - 1) >= 1;
            if (holds && increment) break;
            ++m0;
            if (m0 > (1ll << 20)) throw std::logic_error("backward escape threshold not found");
        }
        n_eff = std::max(n_eff, m0);
        fwd_bound = reach * pow_int(abs_a, n_eff + 1) / (1 - abs_a);
        // backward tail: mu(f^{-m} B') <= e^{-(m+1)} for m > n_eff
        CertReal e_inv = exp_point(Rational(-1), 128);
        CertReal bwd = pow_cert(e_inv, n_eff + 2) / (CertReal(Rational(1)) - e_inv);
        tail = CertReal::from_bounds(Rational(0), (CertReal(fwd_bound) + bwd).upper());
    }

    // exact head sums
    ExpSum head_acc;
    for (const auto& p : b_prime.parts()) head_acc += IntervalSet({p}).measure_sum();
    rep.head_sums.push_back({0, head_acc.eval(96)});
    for (long long n = 1; n <= n_eff; ++n) {
        std::vector<Interval> fwd_parts, bwd_parts;
        for (const auto& p : b_prime.parts()) {
            fwd_parts.push_back(f.iterate(p, n));
            bwd_parts.push_back(f.iterate(p, -n));
        }
        head_acc += IntervalSet(std::move(fwd_parts)).measure_sum();
        head_acc += IntervalSet(std::move(bwd_parts)).measure_sum();
        if (n <= 8 || n % 8 == 0 || n == n_eff) rep.head_sums.push_back({n, head_acc.eval(96)});
    }
    rep.tail_bound = tail;
    CertReal head_final = head_acc.eval(128);
    rep.total_upper = CertReal::from_bounds(head_final.lower(), (head_final + tail).upper());
    return rep;
}

}  // namespace lindyn::affine
