#pragma once

#include "lindyn/cert_real.hpp"
#include "lindyn/errors.hpp"

#include <map>
#include <string>
#include <vector>

namespace lindyn::odometer {

// Digit alphabets: |A_j| = 2 for even j, 2j for odd j (1-indexed).
long long branch_size(int j);
// Digit measures: 1/2 each for even j; (1 - 2^-j)/j on the low half and
// 2^-j / j on the high half for odd j. Each mu_j is a probability.
Rational digit_measure(int j, long long v);
// P_d = |A_1| * ... * |A_d|
long long depth_product(int depth);

inline constexpr int kMaxDepth = 8;

struct Cylinder {
    std::vector<long long> digits;  // a_1 .. a_d

    int depth() const { return static_cast<int>(digits.size()); }
    long long val() const;  // mixed-radix value, digit 1 least significant
    Rational measure() const;
    static Cylinder from_val(int depth, long long val);
    static Cylinder parse(const std::string& text);  // "[a1,a2,...]"
    std::string str() const;
};

// Finite union of cylinders in canonical form: a common depth with a sorted
// value list, reduced whenever the union is a union of shallower cylinders.
class CylinderSet {
public:
    CylinderSet() = default;  // empty set at depth 0
    static CylinderSet whole_space();
    static CylinderSet of(const Cylinder& c);
    static CylinderSet from_vals(int depth, std::vector<long long> vals);

    int depth() const { return depth_; }
    const std::vector<long long>& vals() const { return vals_; }
    bool empty() const { return vals_.empty() && depth_ >= 0 && !whole_; }
    bool is_whole() const { return whole_; }

    Rational measure() const;
    CylinderSet refined_to(int depth) const;
    // f^n image: value shift by +n at the refined depth
    CylinderSet image(long long n) const;
    CylinderSet intersect(const CylinderSet& other) const;
    CylinderSet unite(const CylinderSet& other) const;
    bool operator==(const CylinderSet& other) const;

    std::string str() const;

private:
    void canonicalize();
    bool whole_ = false;
    int depth_ = 0;
    std::vector<long long> vals_;
};

// Rational step function on depth-d cylinders.
struct CylinderStep {
    int depth = 0;
    std::map<long long, Rational> amp;  // val -> amplitude, zeros omitted

    static CylinderStep indicator(const CylinderSet& s);
    bool operator==(const CylinderStep&) const = default;
};

// (T^n phi)(x) = phi(f^n x)
CylinderStep apply_T(const CylinderStep& phi, long long n);
CertReal step_lp_norm_pow(const CylinderStep& phi, const Rational& p, int prec_bits = 96);

struct PeriodicCylinderReport {
    CylinderStep vec;
    long long period = 1;  // least N with T^N chi_s = chi_s
};

// chi_s together with its least period (a divisor of P_depth), verified by
// exact value-set rotation.
PeriodicCylinderReport periodic_point_cylinder(const CylinderSet& s);

struct ConservativityEvidence {
    long long n = 0;
    Rational intersection_measure;
};

// first n >= 1 with mu(s and f^-n s) > 0; throws NotFoundWithinBound
ConservativityEvidence conservativity_evidence(const CylinderSet& s, long long max_n);

struct StepApproxReport {
    CylinderStep approx;
    long long period = 1;
    Rational distance_pow;  // exact ||approx - target||_p^p (0 for step targets)
};

// Finite cylinder step functions are already periodic: returns the target with
// its least period.
StepApproxReport simple_function_approx(const CylinderStep& target, const Rational& p);

}  // namespace lindyn::odometer
