#pragma once

#include "lindyn/atomic_system.hpp"

#include <map>
#include <vector>

namespace lindyn {

// Finitely supported simple function on atoms; zero amplitudes are never stored.
struct LpVector {
    std::map<Atom, Rational> amp;

    static LpVector indicator(const Atom& a) { return LpVector{{{a, Rational(1)}}}; }
    bool zero() const { return amp.empty(); }
    void set(const Atom& a, Rational v);
    Rational at(const Atom& a) const;
    LpVector& add_scaled(const LpVector& o, const Rational& c);
    bool operator==(const LpVector&) const = default;
};

LpVector scale(const LpVector& v, const Rational& c);
LpVector add(const LpVector& a, const LpVector& b);

enum class ForwardPolicy { Strict, Drop };

// (T^n phi)(x) = phi(f^n x): amplitude at atom a moves to f^{-n}(a). In forward
// mode atoms without an n-th preimage either raise ForwardOnly (Strict) or
// leave the support (Drop), matching the unilateral shift.
LpVector apply_T(const AtomicSystem& sys, const LpVector& phi, long long n,
                 ForwardPolicy policy = ForwardPolicy::Strict);
// Right inverse on indicators: amplitude at atom a moves to f^n(a).
LpVector apply_S(const AtomicSystem& sys, const LpVector& phi, long long n);

// ||phi||_p^p, exact rational when p is an integer and weights are exact.
CertReal lp_norm_pow(const AtomicSystem& sys, const LpVector& phi, int prec_bits = 96);
std::optional<Rational> lp_norm_pow_exact(const AtomicSystem& sys, const LpVector& phi);
CertReal lp_norm(const AtomicSystem& sys, const LpVector& phi, int prec_bits = 96);
CertReal lp_distance_pow(const AtomicSystem& sys, const LpVector& a, const LpVector& b,
                         int prec_bits = 96);

struct DensityPoint {
    long long horizon = 0;
    long long count = 0;
    double density = 0.0;
};

struct DensityCurve {
    std::vector<DensityPoint> points;
    std::vector<long long> hits;
    double lower_density_estimate = 0.0;  // min over M in [N/2, N] of count(M)/M
    long long horizon = 0;
};

// Visit-time statistics of T^n phi against an eps-ball around target, n in
// [1, horizon]. The default path runs in floating point (statistics, not
// verdicts); exact mode is available for small horizons with integer p.
DensityCurve hitting_density(const AtomicSystem& sys, const LpVector& phi,
                             const LpVector& target, const Rational& eps, long long horizon,
                             bool exact_mode = false);

// Residue-periodic vector: line amplitudes repeat with the global period,
// cycle amplitudes are plain. T^period fixes it structurally.
struct PeriodicVector {
    long long period = 1;
    std::map<std::pair<int, long long>, std::map<long long, Rational>> line_patterns;
    std::map<Atom, Rational> cycle_amp;
    bool operator==(const PeriodicVector&) const = default;
};

PeriodicVector apply_T_periodic(const AtomicSystem& sys, const PeriodicVector& v, long long n);

struct PeriodicApproxReport {
    long long period = 1;
    CertReal distance_pow;  // ||pi - target||_p^p
    CertReal distance;
    PeriodicVector vec;
};

// Periodic vector within eps of the target: exact on cycles, N-periodic
// spreading on summable lines. Throws CannotApproximate when a line carries
// target mass but has no finite orbit-sum certificate.
PeriodicApproxReport periodic_point_approx(const AtomicSystem& sys, const LpVector& target,
                                           const Rational& eps, int prec_bits = 96);

// Sum over the residue class {i == r (mod N)} of mu(atom index i) on a line.
CertReal lattice_measure_sum(const WeightProfile& wp, long long residue, long long period,
                             int prec_bits = 96);

}  // namespace lindyn
