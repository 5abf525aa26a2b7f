#pragma once

#include "lindyn/exp_sum.hpp"
#include "lindyn/errors.hpp"

#include <optional>
#include <vector>

namespace lindyn::affine {

// Distribution function of the density e^{-|t|}/2: F(t) = e^t/2 for t <= 0,
// 1 - e^{-t}/2 for t >= 0, as an exact exponential sum.
ExpSum distribution_value(const Rational& t);
// mu([t, +inf)) and mu((-inf, t])
ExpSum ray_measure_above(const Rational& t);
ExpSum ray_measure_below(const Rational& t);

struct Interval {
    Rational lo, hi;
};

// Finite union of bounded intervals with rational endpoints, kept sorted and
// disjoint (touching endpoints merge; single points carry no measure).
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> parts);
    static IntervalSet of(Rational lo, Rational hi);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    Rational total_length() const;
    ExpSum measure_sum() const;
    CertReal measure(int prec_bits = 96) const;
    IntervalSet subtract(const Interval& cut) const;

private:
    std::vector<Interval> parts_;
};

// x -> a x + b with 0 < |a| <= 1, excluding the identity.
struct AffineMap {
    Rational a, b;
    AffineMap(Rational a_, Rational b_);

    Rational apply(const Rational& x) const { return a * x + b; }
    Interval image(const Interval& j) const;
    IntervalSet image(const IntervalSet& s) const;
    // n-th forward image (n >= 0) or backward image (n < 0), exact endpoints
    Interval iterate(const Interval& j, long long n) const;
    bool is_translation() const { return a == 1; }
    bool is_involution() const { return a == -1; }
    std::optional<Rational> fixed_point() const;
};

struct StarCheckReport {
    CertReal bound;  // |a| e^{-|b|}
    long long trials = 0;
    long long violations = 0;
    long long exact_equalities = 0;  // margin exactly zero (symbolic)
    CertReal min_ratio;
    Rational min_margin_lower;  // certified lower bound of the worst margin
};

// mu(f(J))/mu(J) >= |a| e^{-|b|} over random rational intervals; margins are
// decided symbolically, so a zero margin is detected exactly.
StarCheckReport star_bound_check(const AffineMap& f, long long trials, unsigned long long seed);

enum class RecurrentKind { Empty, SinglePoint, AllOfR };
struct RecurrenceReport {
    RecurrentKind kind = RecurrentKind::Empty;
    std::optional<Rational> fixed_point;
};

RecurrenceReport recurrent_set(const AffineMap& f);

struct ScWitnessReport {
    IntervalSet b_prime;
    CertReal removed_measure;                              // mu(B \ B')
    Rational delta;                                        // dyadic cut radius (0 if none)
    std::vector<std::pair<long long, CertReal>> head_sums; // N -> sum_{|n| <= N} mu(f^n(B'))
    CertReal tail_bound;                                   // certified bound beyond the last N
    CertReal total_upper;                                  // final head upper + tail upper
};

// Removes a dyadic neighborhood of the fixed point small enough that the lost
// mass stays below eps, then certifies sum_n mu(f^n(B')) by exact head sums
// plus geometric tail bounds. Translations (a = 1) keep B' = B. The a = -1
// involution has a full recurrent set and is refused.
ScWitnessReport sc_witness(const AffineMap& f, const IntervalSet& b, const Rational& eps,
                           long long head_n = 48);

}  // namespace lindyn::affine
