#include "lindyn/fhc.hpp"

#include <algorithm>
#include <numeric>

namespace lindyn {

DenseFamily::DenseFamily(const AtomicSystem& sys) : sys_(&sys) {
    if (!sys.bijective())
        throw UnsupportedCombination("the dense family construction needs a bijective system");
    for (int id = 0; id < static_cast<int>(sys.orbits().size()); ++id) {
        if (sys.orbit(id).kind != OrbitKind::ZLine) continue;
        if (sys.orbit_sum(id).summable()) lines_.push_back(id);
    }
    if (lines_.empty())
        throw SCRequired("no line orbit carries a finite orbit-sum certificate");
}

namespace {

// amplitude options for level t: index 0 is zero, then reduced k/d ordered by
// (d, k, sign)
std::vector<Rational> amp_options(long long t) {
    std::vector<Rational> opts{Rational(0)};
    for (long long d = 1; d <= t; ++d)
        for (long long k = 1; k <= t * d; ++k) {
            if (std::gcd(k, d) != 1) continue;
            opts.push_back(Rational(k, d));
            opts.push_back(Rational(-k, d));
        }
    return opts;
}

long long amp_min_level(const Rational& a) {
    if (a == 0) return 1;
    long long d = to_ll(denominator(a));
    Rational mag = abs_rat(a);
    long long lvl = d;
    // smallest t with |a| <= t
    Int c = numerator(mag) / denominator(mag);
    if (c * denominator(mag) < numerator(mag)) c += 1;
    lvl = std::max(lvl, to_ll(c));
    return std::max<long long>(lvl, 1);
}

}  // namespace

LpVector DenseFamily::member(long long index) const {
    if (index < 1) throw std::invalid_argument("family members are indexed from 1");
    long long emitted = 0;
    for (long long t = 1; t <= 2; ++t) {
        long long nlines = std::min<long long>(t, static_cast<long long>(lines_.size()));
        long long width = 2 * (t - 1) + 1;
        auto opts = amp_options(t);
        size_t positions = static_cast<size_t>(nlines * width);
        std::vector<size_t> digits(positions, 0);
        while (true) {
            // decode one tuple
            LpVector v;
            long long min_level = 1;
            for (size_t pos = 0; pos < positions; ++pos) {
                const Rational& a = opts[digits[pos]];
                if (a == 0) continue;
                long long line_i = static_cast<long long>(pos) / width;
                long long idx = static_cast<long long>(pos) % width - (t - 1);
                min_level = std::max({min_level, line_i + 1, (idx < 0 ? -idx : idx) + 1,
                                      amp_min_level(a)});
                v.set(Atom{lines_[static_cast<size_t>(line_i)], 0, idx}, a);
            }
            if (!v.zero() && min_level == t) {
                ++emitted;
                if (emitted == index) return v;
            }
            // odometer increment, last position fastest
            size_t pos = positions;
            while (pos > 0) {
                --pos;
                if (++digits[pos] < opts.size()) break;
                digits[pos] = 0;
                if (pos == 0) goto next_level;
            }
        }
    next_level:;
    }
    throw std::invalid_argument("family index beyond the supported enumeration block");
}

std::vector<LpVector> DenseFamily::members(long long count) const {
    std::vector<LpVector> out;
    for (long long i = 1; i <= count; ++i) out.push_back(member(i));
    return out;
}

FrequencySchedule::FrequencySchedule(int slot_count) : slots_(slot_count) {
    if (slot_count < 0 || slot_count > 25)
        throw std::invalid_argument("slot count must lie in [0, 25]");
}

Rational FrequencySchedule::designed_density(int k) const {
    if (k < 1 || k > slots_) throw std::invalid_argument("slot out of range");
    // base class density 2^-(2k+1) with a factor-of-two thinning margin
    return Rational(Int(1), Int(1) << (2 * (k + 1)));
}

bool FrequencySchedule::base_member(int k, long long n) const {
    if (n < 1) return false;
    long long mod = 1ll << (2 * k + 1);
    long long res = 1ll << (2 * k - 1);
    return n % mod == res;
}

bool FrequencySchedule::member(int k, long long n) const {
    if (k < 1 || k > slots_) throw std::invalid_argument("slot out of range");
    if (!base_member(k, n)) return false;
    // drop elements sitting within l of a higher slot's base class
    for (int l = k + 1; l <= slots_; ++l) {
        long long mod = 1ll << (2 * l + 1);
        long long res = 1ll << (2 * l - 1);
        long long q = (n - res) / mod;
        for (long long j = q - 1; j <= q + 1; ++j) {
            if (j < 0) continue;
            long long m = res + j * mod;
            long long gap = m > n ? m - n : n - m;
            if (gap < l) return false;
        }
    }
    return true;
}

std::vector<long long> FrequencySchedule::slot_elements(int k, long long lo, long long hi) const {
    std::vector<long long> out;
    long long mod = 1ll << (2 * k + 1);
    long long res = 1ll << (2 * k - 1);
    long long first = res;
    if (lo > first) first = res + ((lo - res + mod - 1) / mod) * mod;
    for (long long n = first; n <= hi; n += mod)
        if (member(k, n)) out.push_back(n);
    return out;
}

FhcVector construct_fh_vector(const AtomicSystem& sys, const DenseFamily& family,
                              const FrequencySchedule& schedule, long long horizon) {
    auto sc = check_sc(sys);
    if (!sc.holds()) throw SCRequired("the construction needs a Holds verdict: " + sc.reason);
    FhcVector out;
    out.horizon = horizon;
    if (schedule.slots() == 0) return out;
    out.members = family.members(schedule.slots());

    CertReal tail_pow_sums{Rational(0)};
    std::vector<CertReal> slot_tail_norms;
    for (int k = 1; k <= schedule.slots(); ++k) {
        const LpVector& y = out.members[static_cast<size_t>(k - 1)];
        long long wdiam = 0;
        for (const auto& [a, v] : y.amp)
            wdiam = std::max(wdiam, a.index < 0 ? -a.index : a.index);
        // slot gap 2^{2k+1} must exceed the support diameter so translates
        // within the slot stay disjoint
        if (2 * wdiam >= (1ll << (2 * k + 1)))
            throw UnsupportedCombination("member support too wide for slot " + std::to_string(k));

        for (long long n : schedule.slot_elements(k, 1, horizon)) {
            for (const auto& [a, v] : y.amp) {
                Atom dst = sys.iterate(a, n);
                if (dst.index > horizon || dst.index < -horizon) continue;
                Rational cur = out.vec.at(dst);
                if (cur != 0) ++out.support_collisions;
                out.vec.set(dst, cur + v);
            }
        }

        // certified tail: sum_{n > horizon - wdiam} ||S^n y||_p^p, disjoint
        // within the slot, triangle inequality across slots
        long long m0 = std::max<long long>(horizon - wdiam, 0);
        CertReal pow_sum{Rational(0)};
        for (const auto& [a, v] : y.amp) {
            const auto& wp = sys.orbit(a.orbit).weights;
            CertReal amp_pow = is_integer(sys.p())
                                   ? CertReal(pow_int(abs_rat(v), to_ll(numerator(sys.p()))))
                                   : pow_rational(abs_rat(v), sys.p(), 96);
            pow_sum += amp_pow * wp.tail_bound_pos(std::max<long long>(m0 + a.index, 0), 96);
        }
        slot_tail_norms.push_back(pow_sum);
        tail_pow_sums += pow_sum;
    }
    // || sum of slot tails ||_p <= sum_k (slot pow sum)^{1/p}
    CertReal norm_bound{Rational(0)};
    for (const auto& s : slot_tail_norms) {
        Rational hi = s.upper() < 0 ? Rational(0) : s.upper();
        long long num = to_ll(numerator(sys.p())), den = to_ll(denominator(sys.p()));
        CertReal root = nth_root(pow_int(hi, den), static_cast<unsigned>(num), 96);
        norm_bound += CertReal::from_bounds(Rational(0), root.upper());
    }
    out.tail_norm_bound = norm_bound;
    return out;
}

namespace {

// sum over i < k (below) or i > k (above) of mu(i) on a line, certified
CertReal line_sum_below(const WeightProfile& wp, long long k, int prec) {
    if (k <= 0) return wp.tail_bound_neg(-k, prec);
    CertReal head = wp.partial_sum(0, k - 1, prec);
    return head + wp.tail_bound_neg(0, prec);
}

CertReal line_sum_above(const WeightProfile& wp, long long k, int prec) {
    if (k >= 0) return wp.tail_bound_pos(k, prec);
    CertReal head = wp.partial_sum(k + 1, 0, prec);
    return head + wp.tail_bound_pos(0, prec);
}

}  // namespace

UnconditionalCertificate verify_unconditional(const AtomicSystem& sys, const LpVector& phi) {
    UnconditionalCertificate cert;
    cert.orlicz_applicable = sys.p() >= 2;
    CertReal t_sum{Rational(0)}, s_sum{Rational(0)};
    for (const auto& [a, v] : phi.amp) {
        const auto& o = sys.orbit(a.orbit);
        if (o.kind == OrbitKind::Cycle)
            throw TailNotCertified("cycle-supported vector: iterate norms recur, series diverges");
        auto s = sys.orbit_sum(a.orbit);
        if (!s.summable())
            throw TailNotCertified("orbit " + std::to_string(a.orbit) +
                                   " lacks a finite certificate: " + s.reason);
        CertReal amp_pow = is_integer(sys.p())
                               ? CertReal(pow_int(abs_rat(v), to_ll(numerator(sys.p()))))
                               : pow_rational(abs_rat(v), sys.p(), 96);
        t_sum += amp_pow * line_sum_below(o.weights, a.index, 96);
        s_sum += amp_pow * line_sum_above(o.weights, a.index, 96);
    }
    cert.t_series_pow_sum = t_sum;
    cert.s_series_pow_sum = s_sum;
    cert.note = "disjoint translates along lines: unconditional convergence from absolute "
                "summability of the measure series";
    return cert;
}

EmpiricalFhReport empirical_fh_check(const AtomicSystem& sys, const LpVector& x,
                                     const std::vector<LpVector>& targets, const Rational& eps,
                                     long long horizon, const std::vector<Atom>& w_atoms) {
    EmpiricalFhReport rep;
    rep.min_lower_density = 1.0;
    for (const auto& t : targets) {
        rep.curves.push_back(hitting_density(sys, x, t, eps, horizon));
        rep.min_lower_density = std::min(rep.min_lower_density, rep.curves.back().lower_density_estimate);
    }
    if (rep.curves.empty() || rep.curves.front().hits.empty()) return rep;

    DnSequence seq = compute_dn(sys, w_atoms, 64);
    const auto& hits = rep.curves.front().hits;
    CertReal head_total{Rational(0)};
    for (const auto& [n, v] : seq.values) head_total += v;
    CertReal beyond_window{Rational(0)};
    if (seq.sum.summable()) {
        Rational hi = seq.sum.total.upper() - head_total.lower();
        beyond_window = CertReal::from_bounds(Rational(0), hi < 0 ? Rational(0) : hi);
    }

    size_t stride = std::max<size_t>(1, hits.size() / 32);
    for (size_t i = 0; i < hits.size(); i += stride) {
        long long n = hits[i];
        CertReal acc{Rational(0)};
        for (long long m : hits) {
            long long d = m - n;
            auto it = seq.values.find(d);
            if (it != seq.values.end()) acc += it->second;
        }
        acc += beyond_window;  // contributions with |m - n| beyond the window
        rep.lemma_sums.push_back({n, acc});
        if (!(acc.upper() < 2)) rep.lemma_bound_respected = false;
    }
    return rep;
}

}  // namespace lindyn
