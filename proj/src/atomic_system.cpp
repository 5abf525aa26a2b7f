#include "lindyn/atomic_system.hpp"

#include <algorithm>
#include <set>

namespace lindyn {

std::string Atom::str() const {
    return "(orbit " + std::to_string(orbit) + ", copy " + std::to_string(copy) + ", index " +
           std::to_string(index) + ")";
}

AtomicSystem::AtomicSystem(std::vector<OrbitSpec> orbits, Rational p, SystemMode mode)
    : orbits_(std::move(orbits)), p_(std::move(p)), mode_(mode) {
    validate();
    for (const auto& o : orbits_)
        if (o.kind == OrbitKind::ZLine &&
            std::holds_alternative<WeightProfile::Window>(o.weights.data()))
            partial_ = true;
}

void AtomicSystem::validate() const {
    if (orbits_.empty()) throw InvalidSystem("system needs at least one orbit");
    if (p_ < 1) throw InvalidSystem("L^p exponent requires p >= 1");
    for (const auto& o : orbits_) {
        if (!o.copies.infinite && o.copies.count < 1)
            throw InvalidSystem("orbit copies must be >= 1");
        if (o.kind == OrbitKind::Cycle) {
            if (o.cycle_length < 1) throw InvalidSystem("cycle length must be >= 1");
            for (long long i = 0; i < o.cycle_length; ++i)
                if (!o.weights.in_domain(i))
                    throw InvalidSystem("cycle weights must cover indices 0..L-1");
        } else {
            bool forward_profile = o.weights.domain() == ProfileDomain::ForwardN;
            if (bijective() && forward_profile)
                throw InvalidSystem("forward-only weight profile on a line requires forward mode");
        }
    }
}

void AtomicSystem::check_atom(const Atom& a) const {
    if (a.orbit < 0 || static_cast<size_t>(a.orbit) >= orbits_.size())
        throw InvalidSystem("atom references unknown orbit " + std::to_string(a.orbit));
    const auto& o = orbit(a.orbit);
    if (!o.copies.infinite && (a.copy < 0 || a.copy >= o.copies.count))
        throw InvalidSystem("atom copy out of range: " + a.str());
    if (o.kind == OrbitKind::Cycle) {
        if (a.index < 0 || a.index >= o.cycle_length)
            throw InvalidSystem("cycle index out of range: " + a.str());
    } else if (mode_ == SystemMode::Forward && a.index < 0) {
        throw InvalidSystem("forward-mode line indices start at 0: " + a.str());
    }
}

Atom AtomicSystem::successor(const Atom& a) const {
    check_atom(a);
    const auto& o = orbit(a.orbit);
    Atom b = a;
    if (o.kind == OrbitKind::Cycle)
        b.index = (a.index + 1) % o.cycle_length;
    else
        b.index = a.index + 1;
    return b;
}

Atom AtomicSystem::predecessor(const Atom& a) const {
    check_atom(a);
    const auto& o = orbit(a.orbit);
    Atom b = a;
    if (o.kind == OrbitKind::Cycle) {
        b.index = (a.index + o.cycle_length - 1) % o.cycle_length;
        return b;
    }
    if (mode_ == SystemMode::Forward && a.index == 0)
        throw ForwardOnly("line start has no preimage in forward mode: " + a.str());
    b.index = a.index - 1;
    return b;
}

bool AtomicSystem::iterate_defined(const Atom& a, long long n) const {
    check_atom(a);
    const auto& o = orbit(a.orbit);
    if (o.kind == OrbitKind::Cycle) return true;
    if (mode_ == SystemMode::Forward && a.index + n < 0) return false;
    return true;
}

Atom AtomicSystem::iterate(const Atom& a, long long n) const {
    check_atom(a);
    const auto& o = orbit(a.orbit);
    Atom b = a;
    if (o.kind == OrbitKind::Cycle) {
        long long L = o.cycle_length;
        b.index = ((a.index + n) % L + L) % L;
        return b;
    }
    if (!iterate_defined(a, n))
        throw ForwardOnly("iterate leaves the forward domain: " + a.str() + " n=" + std::to_string(n));
    b.index = a.index + n;
    return b;
}

CertReal AtomicSystem::measure(const Atom& a, int prec_bits) const {
    check_atom(a);
    return orbit(a.orbit).weights.weight(a.index, prec_bits);
}

std::optional<Rational> AtomicSystem::measure_exact(const Atom& a) const {
    check_atom(a);
    return orbit(a.orbit).weights.weight_exact(a.index);
}

HopfDecomposition AtomicSystem::hopf_decompose() const {
    HopfDecomposition h;
    for (int id = 0; id < static_cast<int>(orbits_.size()); ++id) {
        if (orbits_[static_cast<size_t>(id)].kind == OrbitKind::Cycle)
            h.conservative_orbits.push_back(id);
        else
            h.dissipative_orbits.push_back(id);
    }
    return h;
}

namespace {

// least c for one cycle: max over i of w_{i-1 mod L}/w_i
CertReal cycle_pred_ratio(const OrbitSpec& o, int prec) {
    CertReal best{Rational(0)};
    bool first = true;
    for (long long i = 0; i < o.cycle_length; ++i) {
        long long prev = (i + o.cycle_length - 1) % o.cycle_length;
        CertReal ratio = o.weights.weight(prev, prec) / o.weights.weight(i, prec);
        if (first) {
            best = ratio;
            first = false;
        } else {
            best = CertReal::from_bounds(std::max(best.lower(), ratio.lower()),
                                         std::max(best.upper(), ratio.upper()));
        }
    }
    return best;
}

// least c for a line restricted to indices >= 0 (forward mode)
CertReal forward_line_pred_ratio(const WeightProfile& wp, int prec) {
    using WP = WeightProfile;
    if (auto* g = std::get_if<WP::Geometric>(&wp.data())) {
        (void)g;
        return CertReal(Rational(1)) / CertReal(std::get<WP::Geometric>(wp.data()).r);
    }
    if (auto* t = std::get_if<WP::TwoSided>(&wp.data()))
        return CertReal(std::max(Rational(Rational(1) / t->rp), Rational(t->c0 / (t->cp * t->rp))));
    if (auto* p = std::get_if<WP::Power>(&wp.data()))
        return pow_rational(Rational(2), abs_rat(p->s), prec);
    return wp.sup_step_ratio(-1).value;  // ProductForm handles N natively
}

}  // namespace

StarResult AtomicSystem::star_constant() const {
    StarResult out;
    CertReal best{Rational(0)};
    bool first = true;
    for (size_t i = 0; i < orbits_.size(); ++i) {
        const auto& o = orbits_[i];
        CertReal c;
        if (o.kind == OrbitKind::Cycle) {
            c = cycle_pred_ratio(o, 96);
        } else if (mode_ == SystemMode::Forward) {
            c = forward_line_pred_ratio(o.weights, 96);
        } else {
            auto rb = o.weights.sup_step_ratio(-1);
            if (rb.undecided) {
                out.undecided = true;
                out.witness = "orbit " + std::to_string(i) + ": " + rb.witness;
            }
            c = rb.value;
        }
        if (first) {
            best = c;
            first = false;
        } else {
            best = CertReal::from_bounds(std::max(best.lower(), c.lower()),
                                         std::max(best.upper(), c.upper()));
        }
    }
    out.c = best;
    out.finite = true;  // every supported family has bounded step ratios
    return out;
}

SummabilityResult AtomicSystem::orbit_sum(int id, int prec_bits) const {
    const auto& o = orbit(id);
    if (o.kind == OrbitKind::Cycle) {
        SummabilityResult r;
        r.verdict = Summability::Divergent;
        r.reason = "cycle orbit: every atom recurs infinitely often in the orbit sum";
        return r;
    }
    const auto& wp = o.weights;
    if (mode_ == SystemMode::Bijective) return wp.certify_summability(prec_bits);
    // forward mode: sum over n >= 0 only
    using WP = WeightProfile;
    SummabilityResult res;
    if (auto* g = std::get_if<WP::Geometric>(&wp.data())) {
        if (g->r < 1) {
            res.verdict = Summability::Summable;
            res.total = CertReal(g->a / (1 - g->r));
            res.reason = "geometric ratio < 1 (forward side)";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = "nonvanishing forward terms";
        }
        return res;
    }
    if (auto* t = std::get_if<WP::TwoSided>(&wp.data())) {
        if (t->rp < 1) {
            res.verdict = Summability::Summable;
            res.total = CertReal(t->c0 + t->cp * t->rp / (1 - t->rp));
            res.reason = "geometric ratio < 1 (forward side)";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = "nonvanishing forward terms";
        }
        return res;
    }
    if (auto* p = std::get_if<WP::Power>(&wp.data())) {
        if (p->s > 1) {
            CertReal head = wp.partial_sum(0, 64, prec_bits);
            CertReal tail = wp.tail_bound_pos(64, prec_bits);
            res.verdict = Summability::Summable;
            res.total = CertReal::from_bounds(head.lower(), head.upper() + tail.upper());
            res.reason = "power-law exponent s > 1 via integral comparison";
        } else {
            res.verdict = Summability::Divergent;
            res.reason = "power-law exponent s <= 1";
        }
        return res;
    }
    return wp.certify_summability(prec_bits);  // ProductForm is forward-only; Window is Undecided
}

TotalMeasureResult AtomicSystem::total_measure() const {
    TotalMeasureResult out;
    CertReal acc{Rational(0)};
    for (size_t i = 0; i < orbits_.size(); ++i) {
        const auto& o = orbits_[i];
        CertReal per_orbit;
        if (o.kind == OrbitKind::Cycle) {
            per_orbit = o.weights.partial_sum(0, o.cycle_length - 1);
        } else {
            auto s = orbit_sum(static_cast<int>(i));
            if (s.verdict == Summability::Undecided) {
                out.undecided = true;
                out.reason = "orbit " + std::to_string(i) + ": " + s.reason;
                return out;
            }
            if (s.verdict == Summability::Divergent) {
                out.finite = false;
                out.reason = "orbit " + std::to_string(i) + " has divergent measure: " + s.reason;
                return out;
            }
            per_orbit = s.total;
        }
        if (o.copies.infinite) {
            out.finite = false;
            out.reason = "infinitely many copies of orbit " + std::to_string(i) +
                         " with positive measure";
            return out;
        }
        acc += per_orbit * CertReal(Rational(o.copies.count));
    }
    out.finite = true;
    out.value = acc;
    out.reason = "sum of per-orbit totals";
    return out;
}

bool AtomicSystem::is_ergodic_dissipative() const {
    auto h = hopf_decompose();
    if (!h.conservative_orbits.empty())
        throw NotDissipative("system has a cycle orbit: " +
                             std::to_string(h.conservative_orbits.front()));
    if (orbits_.size() != 1) return false;
    const auto& c = orbits_.front().copies;
    return !c.infinite && c.count == 1;
}

void AtomicSystem::require_wandering(const std::vector<Atom>& atoms) const {
    std::set<std::pair<int, long long>> lines;
    for (const auto& a : atoms) {
        check_atom(a);
        if (orbit(a.orbit).kind == OrbitKind::Cycle)
            throw NotWandering("cycle atom cannot belong to a wandering set: " + a.str());
        auto key = std::make_pair(a.orbit, a.copy);
        if (!lines.insert(key).second)
            throw NotWandering("two atoms share a line, translates collide: " + a.str());
    }
}

AtomicSystem AtomicSystem::reversed() const {
    if (mode_ != SystemMode::Bijective)
        throw NotInvertibleSystem("forward-mode systems have no inverse presentation");
    std::vector<OrbitSpec> rev;
    rev.reserve(orbits_.size());
    for (const auto& o : orbits_) {
        if (o.kind == OrbitKind::ZLine) {
            rev.push_back(OrbitSpec{OrbitKind::ZLine, 0, o.weights.reversed(), o.copies});
        } else {
            std::map<long long, Rational> w;
            for (long long j = 0; j < o.cycle_length; ++j) {
                long long src = (o.cycle_length - j) % o.cycle_length;
                auto v = o.weights.weight_exact(src);
                if (!v) throw UnsupportedCombination("cycle reversal needs exact weights");
                w[j] = *v;
            }
            rev.push_back(OrbitSpec{OrbitKind::Cycle, o.cycle_length,
                                    WeightProfile::explicit_table(std::move(w)), o.copies});
        }
    }
    return AtomicSystem(std::move(rev), p_, SystemMode::Bijective);
}

AtomicSystem AtomicSystem::from_permutation(const std::vector<int>& perm,
                                            const std::vector<Rational>& weights, Rational p) {
    size_t n = perm.size();
    if (weights.size() != n) throw InvalidSystem("permutation and weight sizes differ");
    std::vector<char> seen(n, 0);
    std::vector<char> hit(n, 0);
    for (int v : perm) {
        if (v < 0 || static_cast<size_t>(v) >= n || hit[static_cast<size_t>(v)])
            throw InvalidSystem("not a permutation");
        hit[static_cast<size_t>(v)] = 1;
    }
    std::vector<OrbitSpec> orbits;
    for (size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::map<long long, Rational> w;
        long long idx = 0;
        size_t cur = start;
        do {
            seen[cur] = 1;
            w[idx++] = weights[cur];
            cur = static_cast<size_t>(perm[cur]);
        } while (cur != start);
        orbits.push_back(OrbitSpec{OrbitKind::Cycle, idx,
                                   WeightProfile::explicit_table(std::move(w)), Copies::one()});
    }
    return AtomicSystem(std::move(orbits), std::move(p), SystemMode::Bijective);
}

AtomicSystem AtomicSystem::grid_lines(Rational p, Copies copies) {
    std::vector<OrbitSpec> orbits;
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1), Rational(1, 2)), copies});
    return AtomicSystem(std::move(orbits), std::move(p), SystemMode::Bijective);
}

}  // namespace lindyn
