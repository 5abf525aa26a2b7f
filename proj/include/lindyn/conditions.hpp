#pragma once

#include "lindyn/atomic_system.hpp"
#include "lindyn/tail_form.hpp"

#include <map>
#include <optional>
#include <utility>

namespace lindyn {

// Summability condition over the whole system, decided atomwise: every atom's
// full orbit sum must carry a finite certificate. A single divergent atom
// defeats the condition (it cannot be removed below its own mass), and a
// cycle orbit counts its atoms infinitely often.
struct ScResult {
    enum class Verdict { Holds, Fails, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::vector<SummabilityResult> orbit_certificates;  // indexed by orbit id
    std::optional<Atom> failing_atom;
    std::optional<int> conservative_orbit;
    std::string reason;
    // finite case: max over orbits of the per-atom orbit sum
    CertReal per_atom_bound;

    bool holds() const { return verdict == Verdict::Holds; }
};

ScResult check_sc(const AtomicSystem& sys);

// Upper bound for sum_n mu(f^n(B')) when B' consists of atom_count atoms.
CertReal sc_window_bound(const ScResult& sc, long long atom_count);

struct DnSequence {
    std::vector<Atom> wandering_set;
    bool forward = false;
    long long window = 0;
    std::map<long long, CertReal> values;  // n -> d_n on the output window
    CertReal star_c;
    SummabilityResult sum;  // sum of d_n over Z (or N in forward mode)
    // certified step-ratio bounds on the tails beyond tail_start
    long long tail_start = 0;
    std::optional<CertReal> pos_step_lower;  // <= inf d_{n+1}/d_n for n >= tail_start
    std::optional<CertReal> neg_step_upper;  // >= sup d_{-m}/d_{-m+1} for m > tail_start
};

DnSequence compute_dn(const AtomicSystem& sys, const std::vector<Atom>& w_atoms,
                      long long window = 1000);

struct NecessityResult {
    bool passes = false;
    bool undecided = false;
    CertReal total;  // when passes
    std::string reason;
};

NecessityResult check_necessary_fh(const DnSequence& seq);

struct DistortionCertificate {
    bool finite = false;
    bool undecided = false;
    CertReal K;                           // when finite (exact when realizable)
    std::optional<long long> witness_n;   // when unbounded
    std::string detail;
};

DistortionCertificate check_bounded_distortion(const AtomicSystem& sys,
                                               const std::vector<Atom>& w_atoms,
                                               long long window = 64);

// d_{n+1} >= c^{-1} d_n across the window and, by certificate, on the tails.
bool check_dn_ratio(const DnSequence& seq);

// Arithmetic progression start + k*step inside N.
struct BrSetSpec {
    long long start = 0;
    long long step = 1;
    static BrSetSpec naturals() { return {0, 1}; }
    static BrSetSpec evens() { return {0, 2}; }
    static BrSetSpec multiples(long long k) { return {0, k}; }
};

struct BrBeta {
    long long n = 0;
    CertReal value;
    bool lower_bound_only = false;  // divergent alpha: head-window estimate
};

struct BrReport {
    Rational ratio_c;  // verified one-sided ratio constant of alpha
    SummabilityResult alpha_sum;
    std::vector<BrBeta> beta_samples;
    BrBeta max_beta;
};

BrReport check_br_lemma(const WeightProfile& alpha, const BrSetSpec& a_set, long long horizon);

}  // namespace lindyn
