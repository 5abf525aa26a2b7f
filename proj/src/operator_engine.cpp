#include "lindyn/operator_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lindyn {

void LpVector::set(const Atom& a, Rational v) {
    if (v == 0)
        amp.erase(a);
    else
        amp[a] = std::move(v);
}

Rational LpVector::at(const Atom& a) const {
    auto it = amp.find(a);
    return it == amp.end() ? Rational(0) : it->second;
}

LpVector& LpVector::add_scaled(const LpVector& o, const Rational& c) {
    if (c == 0) return *this;
    for (const auto& [a, v] : o.amp) {
        Rational nv = at(a) + c * v;
        set(a, nv);
    }
    return *this;
}

LpVector scale(const LpVector& v, const Rational& c) {
    LpVector out;
    if (c == 0) return out;
    for (const auto& [a, x] : v.amp) out.amp[a] = c * x;
    return out;
}

LpVector add(const LpVector& a, const LpVector& b) {
    LpVector out = a;
    out.add_scaled(b, Rational(1));
    return out;
}

LpVector apply_T(const AtomicSystem& sys, const LpVector& phi, long long n, ForwardPolicy policy) {
    if (n < 0) throw std::invalid_argument("apply_T takes n >= 0");
    LpVector out;
    for (const auto& [a, v] : phi.amp) {
        if (!sys.iterate_defined(a, -n)) {
            if (policy == ForwardPolicy::Strict)
                throw ForwardOnly("no " + std::to_string(n) + "-th preimage of " + a.str());
            continue;
        }
        out.amp[sys.iterate(a, -n)] = v;
    }
    return out;
}

LpVector apply_S(const AtomicSystem& sys, const LpVector& phi, long long n) {
    if (n < 0) throw std::invalid_argument("apply_S takes n >= 0");
    LpVector out;
    for (const auto& [a, v] : phi.amp) out.amp[sys.iterate(a, n)] = v;
    return out;
}

std::optional<Rational> lp_norm_pow_exact(const AtomicSystem& sys, const LpVector& phi) {
    if (!is_integer(sys.p())) return std::nullopt;
    long long p = to_ll(numerator(sys.p()));
    Rational acc(0);
    for (const auto& [a, v] : phi.amp) {
        auto mu = sys.measure_exact(a);
        if (!mu) return std::nullopt;
        acc += pow_int(abs_rat(v), p) * *mu;
    }
    return acc;
}

namespace {

CertReal abs_pow(const Rational& v, const Rational& p, int prec) {
    Rational a = abs_rat(v);
    if (a == 0) return CertReal(Rational(0));
    return pow_rational(a, p, prec);
}

}  // namespace

CertReal lp_norm_pow(const AtomicSystem& sys, const LpVector& phi, int prec_bits) {
    if (auto e = lp_norm_pow_exact(sys, phi)) return CertReal(*e);
    CertReal acc{Rational(0)};
    for (const auto& [a, v] : phi.amp)
        acc += abs_pow(v, sys.p(), prec_bits) * sys.measure(a, prec_bits);
    return acc;
}

namespace {

// x^{1/p} on interval bounds for rational p = num/den: (x^den)^{1/num}
CertReal root_p(const CertReal& x, const Rational& p, int prec) {
    long long num = to_ll(numerator(p)), den = to_ll(denominator(p));
    auto one_bound = [&](const Rational& b) {
        Rational clipped = b < 0 ? Rational(0) : b;
        return nth_root(pow_int(clipped, den), static_cast<unsigned>(num), prec);
    };
    CertReal lo = one_bound(x.lower());
    CertReal hi = one_bound(x.upper());
    return CertReal::from_bounds(lo.lower(), hi.upper());
}

}  // namespace

CertReal lp_norm(const AtomicSystem& sys, const LpVector& phi, int prec_bits) {
    return root_p(lp_norm_pow(sys, phi, prec_bits), sys.p(), prec_bits);
}

CertReal lp_distance_pow(const AtomicSystem& sys, const LpVector& a, const LpVector& b,
                         int prec_bits) {
    LpVector diff = a;
    diff.add_scaled(b, Rational(-1));
    return lp_norm_pow(sys, diff, prec_bits);
}

namespace {

struct LineSupport {
    int orbit;
    long long copy;
    std::vector<long long> idx;
    std::vector<double> amp;
    std::vector<double> amp_pow;  // |amp|^p
};

struct FastSupports {
    std::vector<LineSupport> lines;  // merged per (orbit, copy); cycles handled exactly
};

double rat_to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace

DensityCurve hitting_density(const AtomicSystem& sys, const LpVector& phi, const LpVector& target,
                             const Rational& eps, long long horizon, bool exact_mode) {
    DensityCurve out;
    out.horizon = horizon;
    if (horizon < 1) return out;

    if (exact_mode) {
        Rational eps_pow;
        if (!is_integer(sys.p()))
            throw UnsupportedCombination("exact hitting mode needs an integer exponent");
        eps_pow = pow_int(eps, to_ll(numerator(sys.p())));
        for (long long n = 1; n <= horizon; ++n) {
            LpVector tn = apply_T(sys, phi, n, ForwardPolicy::Drop);
            auto d = lp_norm_pow_exact(sys, [&] {
                LpVector diff = tn;
                diff.add_scaled(target, Rational(-1));
                return diff;
            }());
            if (!d) throw UnsupportedCombination("exact hitting mode needs exact weights");
            if (*d < eps_pow) out.hits.push_back(n);
        }
    } else {
        // floating-point fast path; weights come from per-line lookup tables
        double p_d = rat_to_double(sys.p());
        double eps_pow = std::pow(rat_to_double(eps), p_d);
        bool forward = !sys.bijective();

        // group both supports per line; cycles get a small exact-period table
        std::map<std::pair<int, long long>, std::pair<std::vector<std::pair<long long, double>>,
                                                      std::vector<std::pair<long long, double>>>>
            per_line;
        for (const auto& [a, v] : phi.amp) per_line[{a.orbit, a.copy}].first.push_back({a.index, rat_to_double(v)});
        for (const auto& [a, v] : target.amp) per_line[{a.orbit, a.copy}].second.push_back({a.index, rat_to_double(v)});

        struct Prepared {
            int orbit;
            bool cycle;
            long long cycle_len;
            std::vector<std::pair<long long, double>> phi_s, tgt_s;  // sorted by index
            std::vector<double> phi_pow, tgt_pow;                    // |amp|^p
            std::vector<double> mu;                                  // lookup table
            long long mu_lo;
        };
        std::vector<Prepared> prep;
        for (auto& [key, pair] : per_line) {
            Prepared pr;
            pr.orbit = key.first;
            const auto& o = sys.orbit(key.first);
            pr.cycle = o.kind == OrbitKind::Cycle;
            pr.cycle_len = o.cycle_length;
            pr.phi_s = pair.first;
            pr.tgt_s = pair.second;
            std::sort(pr.phi_s.begin(), pr.phi_s.end());
            std::sort(pr.tgt_s.begin(), pr.tgt_s.end());
            for (auto& [i, v] : pr.phi_s) pr.phi_pow.push_back(std::pow(std::fabs(v), p_d));
            for (auto& [i, v] : pr.tgt_s) pr.tgt_pow.push_back(std::pow(std::fabs(v), p_d));
            if (pr.cycle) {
                pr.mu_lo = 0;
                for (long long i = 0; i < pr.cycle_len; ++i)
                    pr.mu.push_back(rat_to_double(sys.measure(Atom{pr.orbit, key.second, i}).mid));
            } else {
                long long lo = 0, hi = 0;
                for (auto& [i, v] : pr.phi_s) {
                    lo = std::min(lo, i - horizon);
                    hi = std::max(hi, i);
                }
                for (auto& [i, v] : pr.tgt_s) {
                    lo = std::min(lo, i);
                    hi = std::max(hi, i);
                }
                lo -= 1;
                hi += 1;
                pr.mu_lo = lo;
                pr.mu.reserve(static_cast<size_t>(hi - lo + 1));
                for (long long i = lo; i <= hi; ++i) {
                    bool defined = !(forward && i < 0);
                    pr.mu.push_back(defined ? rat_to_double(sys.orbit(pr.orbit).weights.weight(i).mid)
                                            : 0.0);
                }
            }
            prep.push_back(std::move(pr));
        }

        for (long long n = 1; n <= horizon; ++n) {
            double acc = 0.0;
            for (const auto& pr : prep) {
                auto mu_at = [&](long long i) -> double {
                    long long k = i - pr.mu_lo;
                    if (k < 0 || k >= static_cast<long long>(pr.mu.size())) return 0.0;
                    return pr.mu[static_cast<size_t>(k)];
                };
                if (pr.cycle) {
                    // exact small loop over the cycle support union
                    for (long long i = 0; i < pr.cycle_len; ++i) {
                        double a = 0.0, b = 0.0;
                        long long src = (i + n) % pr.cycle_len;
                        for (size_t k = 0; k < pr.phi_s.size(); ++k)
                            if (pr.phi_s[k].first == src) a = pr.phi_s[k].second;
                        for (size_t k = 0; k < pr.tgt_s.size(); ++k)
                            if (pr.tgt_s[k].first == i) b = pr.tgt_s[k].second;
                        if (a != 0.0 || b != 0.0)
                            acc += std::pow(std::fabs(a - b), p_d) * pr.mu[static_cast<size_t>(i)];
                    }
                    continue;
                }
                // line: T^n phi lives at phi indices - n
                size_t ti = 0;
                for (size_t k = 0; k < pr.phi_s.size(); ++k) {
                    long long j = pr.phi_s[k].first - n;
                    if (forward && j < 0) continue;  // amplitude leaves N
                    while (ti < pr.tgt_s.size() && pr.tgt_s[ti].first < j) {
                        acc += pr.tgt_pow[ti] * mu_at(pr.tgt_s[ti].first);
                        ++ti;
                    }
                    if (ti < pr.tgt_s.size() && pr.tgt_s[ti].first == j) {
                        double d = pr.phi_s[k].second - pr.tgt_s[ti].second;
                        if (d != 0.0) acc += std::pow(std::fabs(d), p_d) * mu_at(j);
                        ++ti;
                    } else {
                        acc += pr.phi_pow[k] * mu_at(j);
                    }
                }
                while (ti < pr.tgt_s.size()) {
                    acc += pr.tgt_pow[ti] * mu_at(pr.tgt_s[ti].first);
                    ++ti;
                }
            }
            if (acc < eps_pow) out.hits.push_back(n);
        }
    }

    // curve and lower-density estimate
    long long stride = std::max<long long>(1, horizon / 200);
    size_t hi = 0;
    long long count = 0;
    double min_density = 1.0;
    for (long long m = 1; m <= horizon; ++m) {
        while (hi < out.hits.size() && out.hits[hi] <= m) {
            ++hi;
            ++count;
        }
        if (m % stride == 0 || m == horizon)
            out.points.push_back({m, count, static_cast<double>(count) / static_cast<double>(m)});
        if (m >= (horizon + 1) / 2)
            min_density = std::min(min_density, static_cast<double>(count) / static_cast<double>(m));
    }
    out.lower_density_estimate = min_density;
    return out;
}

PeriodicVector apply_T_periodic(const AtomicSystem& sys, const PeriodicVector& v, long long n) {
    PeriodicVector out;
    out.period = v.period;
    long long N = v.period;
    for (const auto& [key, pat] : v.line_patterns) {
        std::map<long long, Rational> np;
        for (const auto& [r, a] : pat) np[((r - n) % N + N) % N] = a;
        out.line_patterns[key] = std::move(np);
    }
    for (const auto& [atom, a] : v.cycle_amp) {
        long long L = sys.orbit(atom.orbit).cycle_length;
        Atom dst = atom;
        dst.index = ((atom.index - n) % L + L) % L;
        out.cycle_amp[dst] = a;
    }
    return out;
}

CertReal lattice_measure_sum(const WeightProfile& wp, long long residue, long long period,
                             int prec_bits) {
    using WP = WeightProfile;
    long long r = ((residue % period) + period) % period;
    if (auto* g = std::get_if<WP::Geometric>(&wp.data())) {
        if (g->r >= 1) throw TailNotCertified("divergent lattice sum");
        // nonnegative reps: r, r+N, ...; negative reps: r-N, r-2N, ...
        Rational rp = pow_int(g->r, period);
        Rational pos = g->a * pow_int(g->r, r) / (1 - rp);
        Rational neg = g->a * pow_int(g->r, period - r) / (1 - rp);
        if (r == 0) neg = g->a * rp / (1 - rp);
        return CertReal(pos + neg);
    }
    if (auto* t = std::get_if<WP::TwoSided>(&wp.data())) {
        if (t->rp >= 1 || t->rm >= 1) throw TailNotCertified("divergent lattice sum");
        Rational stp = pow_int(t->rp, period), stm = pow_int(t->rm, period);
        Rational acc(0);
        if (r == 0) {
            acc += t->c0;
            acc += t->cp * pow_int(t->rp, period) / (1 - stp);
            acc += t->cm * pow_int(t->rm, period) / (1 - stm);
        } else {
            acc += t->cp * pow_int(t->rp, r) / (1 - stp);
            acc += t->cm * pow_int(t->rm, period - r) / (1 - stm);
        }
        return CertReal(acc);
    }
    // certified route: head plus whole-line tail bound
    long long head_k = 8;
    CertReal acc{Rational(0)};
    for (long long k = -head_k; k <= head_k; ++k) {
        long long i = r + k * period;
        if (!wp.in_domain(i)) continue;
        acc += wp.weight(i, prec_bits);
    }
    CertReal tail = wp.tail_bound(head_k * period, prec_bits);
    return CertReal::from_bounds(acc.lower(), (acc + tail).upper());
}

PeriodicApproxReport periodic_point_approx(const AtomicSystem& sys, const LpVector& target,
                                           const Rational& eps, int prec_bits) {
    if (!sys.bijective())
        throw UnsupportedCombination("periodic spreading needs a bijective system");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");

    // base period: lcm of cycle lengths present in the system
    long long cycle_lcm = 1;
    for (const auto& o : sys.orbits())
        if (o.kind == OrbitKind::Cycle) cycle_lcm = std::lcm(cycle_lcm, o.cycle_length);

    long long window = 0;
    bool has_line_mass = false;
    for (const auto& [a, v] : target.amp) {
        if (sys.orbit(a.orbit).kind == OrbitKind::Cycle) continue;
        has_line_mass = true;
        window = std::max(window, a.index < 0 ? -a.index : a.index);
        auto s = sys.orbit_sum(a.orbit);
        if (!s.summable())
            throw CannotApproximate("target touches line orbit " + std::to_string(a.orbit) +
                                    " without a finite orbit-sum certificate: " + s.reason);
    }

    PeriodicApproxReport rep;
    if (!has_line_mass) {
        rep.period = cycle_lcm;
        rep.distance_pow = CertReal(Rational(0));
        rep.distance = CertReal(Rational(0));
        rep.vec.period = cycle_lcm;
        for (const auto& [a, v] : target.amp) rep.vec.cycle_amp[a] = v;
        return rep;
    }

    Rational eps_pow_hi;  // compare distance^p < eps^p
    {
        CertReal e = pow_rational(eps, sys.p(), prec_bits);
        eps_pow_hi = e.lower();
        if (eps_pow_hi <= 0) eps_pow_hi = e.mid;
    }

    long long base = 2 * window + 1;
    long long N = ((base + cycle_lcm - 1) / cycle_lcm) * cycle_lcm;
    for (int attempt = 0; attempt < 64; ++attempt) {
        PeriodicVector pv;
        pv.period = N;
        CertReal dist_pow{Rational(0)};
        for (const auto& [a, v] : target.amp) {
            if (sys.orbit(a.orbit).kind == OrbitKind::Cycle) {
                pv.cycle_amp[a] = v;
                continue;
            }
            long long res = ((a.index % N) + N) % N;
            pv.line_patterns[{a.orbit, a.copy}][res] = v;
            CertReal lattice = lattice_measure_sum(sys.orbit(a.orbit).weights, res, N, prec_bits);
            CertReal extra = lattice - sys.measure(a, prec_bits);
            dist_pow += abs_pow(v, sys.p(), prec_bits) * extra;
        }
        if (dist_pow.upper() < eps_pow_hi) {
            rep.period = N;
            rep.distance_pow = dist_pow;
            rep.distance = root_p(dist_pow, sys.p(), prec_bits);
            rep.vec = std::move(pv);
            return rep;
        }
        N *= 2;
    }
    throw CannotApproximate("periodic spreading did not converge within the period cap");
}

}  // namespace lindyn
