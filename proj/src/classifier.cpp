#include "lindyn/classifier.hpp"

namespace lindyn {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::None: return "no-applicable-rule";
        case Rule::OrbitPartition: return "orbit-structure-partition";
        case Rule::AtomwiseSummability: return "atomwise-orbit-summability";
        case Rule::SummabilityCriterion: return "summability-implies-chaos-mixing-fh";
        case Rule::FiniteMeasureDissipative: return "finite-measure-dissipative-summability";
        case Rule::DissipativeChaosEquivalence: return "dissipative-chaos-summability-equivalence";
        case Rule::NecessarySummableDn: return "fh-necessitates-summable-dn";
        case Rule::ForwardNecessarySummableDn: return "forward-fh-necessitates-summable-dn";
        case Rule::BoundedDistortionEquivalence: return "bounded-distortion-fh-equivalence";
        case Rule::ErgodicAtomicEquivalence: return "ergodic-atomic-finiteness-equivalence";
        case Rule::PeriodicFactorObstruction: return "periodic-factor-obstruction";
        case Rule::InverseDuality: return "inverse-duality";
    }
    return "?";
}

bool ClassificationReport::has_unknowns() const {
    auto unk = [](const VerdictEntry& e) { return e.verdict == Verdict3::Unknown; };
    return unk(chaotic) || unk(frequently_hypercyclic) || unk(topologically_mixing) ||
           unk(dissipative) || unk(mu_finite);
}

bool ClassificationReport::has_undecided() const {
    return sc == ScResult::Verdict::Undecided || distortion == Distortion::Undecided;
}

std::vector<Atom> canonical_generating_set(const AtomicSystem& sys) {
    std::vector<Atom> w;
    for (int id = 0; id < static_cast<int>(sys.orbits().size()); ++id) {
        const auto& o = sys.orbit(id);
        if (o.kind != OrbitKind::ZLine) continue;
        if (o.copies.infinite)
            throw NotGenerating("infinitely many copies admit no finite generating set");
        for (long long c = 0; c < o.copies.count; ++c) w.push_back(Atom{id, c, 0});
    }
    return w;
}

std::vector<Atom> default_dn_set(const AtomicSystem& sys) {
    std::optional<Atom> best;
    CertReal best_mu{Rational(0)};
    for (int id = 0; id < static_cast<int>(sys.orbits().size()); ++id) {
        const auto& o = sys.orbit(id);
        if (o.kind != OrbitKind::ZLine) continue;
        Atom base{id, 0, 0};
        CertReal mu = sys.measure(base);
        if (!best || mu.mid > best_mu.mid) {
            best = base;
            best_mu = mu;
        }
    }
    if (!best) throw NotDissipative("no line orbit present");
    return {*best};
}

namespace {

void classify_forward(const AtomicSystem& sys, ClassificationReport& rep) {
    rep.dissipative = {Verdict3::Unknown, Rule::None,
                       "forward mode: the conservative/dissipative split needs bijectivity"};
    rep.sc = ScResult::Verdict::Undecided;
    rep.sc_note = "summability condition is defined for bijective systems";
    auto total = sys.total_measure();
    if (total.undecided)
        rep.mu_finite = {Verdict3::Unknown, Rule::None, total.reason};
    else
        rep.mu_finite = {total.finite ? Verdict3::Yes : Verdict3::No, Rule::OrbitPartition,
                         total.reason};
    rep.distortion = ClassificationReport::Distortion::NotApplicable;
    rep.distortion_note = "bounded distortion applies to bijective dissipative systems";
    rep.ergodic_dissipative = {Verdict3::Unknown, Rule::None, "forward mode"};

    bool has_cycle = !sys.hopf_decompose().conservative_orbits.empty();
    if (has_cycle) {
        VerdictEntry no{Verdict3::No, Rule::PeriodicFactorObstruction,
                        "cycle factor: T^N = identity, no dense orbit"};
        rep.chaotic = no;
        rep.frequently_hypercyclic = no;
        rep.topologically_mixing = no;
        return;
    }
    // forward necessary condition on the heaviest line's base atom
    auto seq = compute_dn(sys, default_dn_set(sys), 64);
    rep.dn_sum = seq.sum;
    auto nec = check_necessary_fh(seq);
    if (!nec.undecided && !nec.passes)
        rep.frequently_hypercyclic = {Verdict3::No, Rule::ForwardNecessarySummableDn, nec.reason};
    else
        rep.frequently_hypercyclic = {Verdict3::Unknown, Rule::None,
                                      "forward necessary condition passes; no sufficient rule "
                                      "is implemented for forward systems"};
    rep.chaotic = {Verdict3::Unknown, Rule::None, "no forward chaos rule implemented"};
    rep.topologically_mixing = {Verdict3::Unknown, Rule::None, "no forward mixing rule implemented"};
}

}  // namespace

ClassificationReport classify(const AtomicSystem& sys) {
    ClassificationReport rep;
    if (!sys.bijective()) {
        classify_forward(sys, rep);
        return rep;
    }

    auto hopf = sys.hopf_decompose();
    bool has_cycle = !hopf.conservative_orbits.empty();
    bool has_line = !hopf.dissipative_orbits.empty();
    rep.dissipative = {has_cycle ? Verdict3::No : Verdict3::Yes, Rule::OrbitPartition,
                       has_cycle ? "conservative part: cycle orbits present"
                                 : "every orbit is a line of wandering translates"};

    auto total = sys.total_measure();
    if (total.undecided)
        rep.mu_finite = {Verdict3::Unknown, Rule::None, total.reason};
    else
        rep.mu_finite = {total.finite ? Verdict3::Yes : Verdict3::No, Rule::OrbitPartition,
                         total.reason};

    auto sc = check_sc(sys);
    rep.sc = sc.verdict;
    rep.sc_rule = Rule::AtomwiseSummability;
    rep.sc_note = sc.reason;

    // ergodicity (dissipative case only)
    if (!has_cycle) {
        bool erg = sys.is_ergodic_dissipative();
        rep.ergodic_dissipative = {erg ? Verdict3::Yes : Verdict3::No, Rule::OrbitPartition,
                                   erg ? "single line orbit" : "more than one invariant line"};
    } else {
        rep.ergodic_dissipative = {Verdict3::Unknown, Rule::None, "n/a: conservative part present"};
    }

    // bounded distortion on the canonical generating set
    if (has_cycle) {
        rep.distortion = ClassificationReport::Distortion::NotApplicable;
        rep.distortion_note = "dissipative systems only";
    } else {
        bool infinite_copies = false;
        for (const auto& o : sys.orbits()) infinite_copies = infinite_copies || o.copies.infinite;
        if (infinite_copies) {
            rep.distortion = ClassificationReport::Distortion::NotApplicable;
            rep.distortion_note = "no finite generating wandering set: infinitely many lines";
        } else {
            auto cert = check_bounded_distortion(sys, canonical_generating_set(sys));
            if (cert.undecided) {
                rep.distortion = ClassificationReport::Distortion::Undecided;
                rep.distortion_note = cert.detail;
            } else if (cert.finite) {
                rep.distortion = ClassificationReport::Distortion::Finite;
                rep.distortion_k = cert.K;
                rep.distortion_note = cert.detail;
            } else {
                rep.distortion = ClassificationReport::Distortion::Unbounded;
                rep.distortion_note = cert.detail +
                                      (cert.witness_n ? " (witness iterate " +
                                                            std::to_string(*cert.witness_n) + ")"
                                                      : "");
            }
        }
    }

    if (rep.sc == ScResult::Verdict::Holds) {
        VerdictEntry yes{Verdict3::Yes, Rule::SummabilityCriterion,
                         "summability holds: " + sc.reason};
        rep.chaotic = yes;
        rep.frequently_hypercyclic = yes;
        rep.topologically_mixing = yes;
        return rep;
    }

    if (has_cycle) {
        VerdictEntry no{Verdict3::No, Rule::PeriodicFactorObstruction,
                        "cycle factor: T^N = identity on an invariant part, orbits cannot be dense"};
        rep.chaotic = no;
        rep.frequently_hypercyclic = no;
        rep.topologically_mixing = no;
        return rep;
    }

    // dissipative, summability fails or undecided
    if (rep.sc == ScResult::Verdict::Fails) {
        rep.chaotic = {Verdict3::No, Rule::DissipativeChaosEquivalence,
                       "dissipative without summability: no dense set of periodic points"};
        rep.topologically_mixing = {Verdict3::Unknown, Rule::None,
                                    "no mixing rule applies without summability"};
        // frequent hypercyclicity
        if (rep.ergodic_dissipative.verdict == Verdict3::Yes &&
            rep.mu_finite.verdict == Verdict3::No) {
            rep.frequently_hypercyclic = {Verdict3::No, Rule::ErgodicAtomicEquivalence,
                                          "ergodic atomic line with infinite measure"};
        } else if (rep.distortion == ClassificationReport::Distortion::Finite) {
            rep.frequently_hypercyclic = {Verdict3::No, Rule::BoundedDistortionEquivalence,
                                          "bounded distortion without summability"};
        } else {
            auto seq = compute_dn(sys, default_dn_set(sys), 64);
            rep.dn_sum = seq.sum;
            auto nec = check_necessary_fh(seq);
            if (!nec.undecided && !nec.passes)
                rep.frequently_hypercyclic = {Verdict3::No, Rule::NecessarySummableDn, nec.reason};
            else
                rep.frequently_hypercyclic = {
                    Verdict3::Unknown, Rule::None,
                    "necessary condition passes and distortion is not bounded; whether bounded "
                    "distortion can be dropped is open"};
        }
        return rep;
    }

    // undecided summability
    VerdictEntry unk{Verdict3::Unknown, Rule::None, "summability undecided: " + sc.reason};
    rep.chaotic = unk;
    rep.frequently_hypercyclic = unk;
    rep.topologically_mixing = unk;
    return rep;
}

PairedReports classify_inverse_pair(const AtomicSystem& sys) {
    if (!sys.bijective())
        throw NotInvertibleSystem("inverse classification needs a bijective system");
    PairedReports out;
    out.forward = classify(sys);
    out.inverse = classify(sys.reversed());
    auto agree = [](const VerdictEntry& a, const VerdictEntry& b) {
        return a.verdict == b.verdict;
    };
    out.fh_agree = agree(out.forward.frequently_hypercyclic, out.inverse.frequently_hypercyclic);
    out.chaotic_agree = agree(out.forward.chaotic, out.inverse.chaotic);
    return out;
}

}  // namespace lindyn
