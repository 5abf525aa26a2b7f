#pragma once

#include "lindyn/conditions.hpp"

#include <optional>

namespace lindyn {

enum class Verdict3 { Yes, No, Unknown };

// Decision rules, named by content; every yes/no verdict carries the rule that
// produced it and "unknown" is reported whenever no rule applies.
enum class Rule {
    None,
    OrbitPartition,                // structural conservative/dissipative split
    AtomwiseSummability,           // per-atom orbit-sum decision procedure
    SummabilityCriterion,          // summability gives chaos + mixing + frequent hypercyclicity
    FiniteMeasureDissipative,      // finite measure + dissipative gives summability
    DissipativeChaosEquivalence,   // dissipative: chaotic iff summability holds
    NecessarySummableDn,           // divergent d_n series rules out frequent hypercyclicity
    ForwardNecessarySummableDn,    // forward-mode variant of the necessary condition
    BoundedDistortionEquivalence,  // bounded distortion: frequent hypercyclicity iff summability
    ErgodicAtomicEquivalence,      // ergodic dissipative atomic: FH iff chaotic iff finite measure
    PeriodicFactorObstruction,     // cycle factor satisfies T^N = id, no dense orbit
    InverseDuality,                // invertible bounded distortion: verdicts transfer to f^{-1}
};

const char* rule_name(Rule r);

struct VerdictEntry {
    Verdict3 verdict = Verdict3::Unknown;
    Rule rule = Rule::None;
    std::string note;
};

struct ClassificationReport {
    VerdictEntry dissipative;
    ScResult::Verdict sc = ScResult::Verdict::Undecided;
    Rule sc_rule = Rule::None;
    std::string sc_note;
    VerdictEntry mu_finite;
    enum class Distortion { Finite, Unbounded, NotApplicable, Undecided };
    Distortion distortion = Distortion::NotApplicable;
    CertReal distortion_k;
    std::string distortion_note;
    VerdictEntry ergodic_dissipative;  // Unknown encodes n/a for cycle-bearing systems
    VerdictEntry chaotic;
    VerdictEntry frequently_hypercyclic;
    VerdictEntry topologically_mixing;
    std::optional<SummabilityResult> dn_sum;  // when the d_n route ran

    bool has_unknowns() const;
    bool has_undecided() const;
};

// Canonical wandering set: one base atom per line copy (finite systems).
std::vector<Atom> canonical_generating_set(const AtomicSystem& sys);
// Base atom of the heaviest line (largest base measure, first on ties).
std::vector<Atom> default_dn_set(const AtomicSystem& sys);

ClassificationReport classify(const AtomicSystem& sys);

struct PairedReports {
    ClassificationReport forward;
    ClassificationReport inverse;
    bool fh_agree = false;
    bool chaotic_agree = false;
};

// Classifies the system and its index-reversed twin.
PairedReports classify_inverse_pair(const AtomicSystem& sys);

}  // namespace lindyn
