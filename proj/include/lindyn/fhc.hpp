#pragma once

#include "lindyn/conditions.hpp"
#include "lindyn/operator_engine.hpp"

namespace lindyn {

// Countable dense family of finite rational simple functions supported on
// lines with finite orbit-sum certificates. Enumeration is diagonal over
// levels t = 1, 2, ...: level t uses the first min(t, #lines) certified lines,
// support indices |i| <= t-1, and reduced amplitudes k/d with d <= t,
// |k/d| <= t; within a level, tuples run in odometer order with amplitude
// options ordered 0, 1/1, -1/1, 2/1, -2/1, ..., 1/2, -1/2, ... A vector is
// emitted at the first level able to express it, so the enumeration is stable
// and member(1) is the indicator of the first certified line's base atom.
class DenseFamily {
public:
    explicit DenseFamily(const AtomicSystem& sys);

    const AtomicSystem& system() const { return *sys_; }
    const std::vector<int>& line_orbits() const { return lines_; }

    // 1-based; supported through the level-2 block (several hundred thousand
    // members), which is far beyond what schedules consume.
    LpVector member(long long index) const;
    std::vector<LpVector> members(long long count) const;

private:
    const AtomicSystem* sys_;
    std::vector<int> lines_;  // orbit ids with Summable orbit certificates
};

// Pairwise disjoint frequency slots A_1..A_K in N with designed densities
// delta_k = 4^{-k}/4 and cross-slot separation |n - m| >= max(k, l). Built
// from the dyadic classes 2^{2k-1} (mod 2^{2k+1}) (disjoint by 2-adic
// valuation, in-slot gap 2^{2k+1}), with elements of lower slots dropped when
// they sit within max(k, l) of a higher slot's class.
class FrequencySchedule {
public:
    explicit FrequencySchedule(int slot_count);

    int slots() const { return slots_; }
    Rational designed_density(int k) const;  // delta_k
    bool member(int k, long long n) const;
    std::vector<long long> slot_elements(int k, long long lo, long long hi) const;

private:
    bool base_member(int k, long long n) const;
    int slots_;
};

struct FhcVector {
    LpVector vec;
    CertReal tail_norm_bound;  // || x - truncation ||_p upper bound
    long long horizon = 0;
    std::vector<LpVector> members;  // y_k, k = 1..K
    long long support_collisions = 0;
};

// Truncation of x = sum_k sum_{n in A_k} S^n y_k to orbit indices |i| <= N.
// Requires a Holds summability verdict; slot tails are certified from the
// per-line orbit certificates (translates along a line are disjoint).
FhcVector construct_fh_vector(const AtomicSystem& sys, const DenseFamily& family,
                              const FrequencySchedule& schedule, long long horizon);

struct UnconditionalCertificate {
    CertReal t_series_pow_sum;  // sum_{n>=1} ||T^n phi||_p^p
    CertReal s_series_pow_sum;  // sum_{n>=1} ||S^n phi||_p^p
    bool orlicz_applicable = false;  // p >= 2
    std::string note;
};

// Certifies both series from orbit summability; refuses cycle-supported or
// uncertified vectors (TailNotCertified).
UnconditionalCertificate verify_unconditional(const AtomicSystem& sys, const LpVector& phi);

struct EmpiricalFhReport {
    std::vector<DensityCurve> curves;
    double min_lower_density = 0.0;
    // sampled n -> sum_{m in hits} d_{m-n}(W); the bound from the
    // frequent-hypercyclicity necessity argument is 2
    std::vector<std::pair<long long, CertReal>> lemma_sums;
    bool lemma_bound_respected = true;
};

EmpiricalFhReport empirical_fh_check(const AtomicSystem& sys, const LpVector& x,
                                     const std::vector<LpVector>& targets, const Rational& eps,
                                     long long horizon, const std::vector<Atom>& w_atoms);

}  // namespace lindyn
