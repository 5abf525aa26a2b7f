#pragma once

#include "lindyn/cert_real.hpp"
#include "lindyn/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lindyn {

// Base sequence of a product-form profile (the weight sequence of a shift).
struct ShiftBase {
    enum class Kind { Const, Periodic };
    Kind kind = Kind::Const;
    Rational value{1};
    std::vector<Rational> pattern;

    Rational at(long long i) const;
    Rational sup() const;
    // Product of one full period (= value for Const).
    Rational period_product() const;
    long long period() const { return kind == Kind::Const ? 1 : static_cast<long long>(pattern.size()); }
};

// Optional geometric tail bound: w_n <= c * r^|n| for all |n| >= n0, r < 1.
struct TailCertificate {
    long long n0 = 0;
    Rational c{1};
    Rational r{1, 2};
};

enum class Summability { Summable, Divergent, Undecided };

struct SummabilityResult {
    Summability verdict = Summability::Undecided;
    CertReal total;        // meaningful when Summable
    std::string reason;    // rule applied or divergence/undecided witness
    bool summable() const { return verdict == Summability::Summable; }
    bool divergent() const { return verdict == Summability::Divergent; }
};

enum class ProfileDomain { AllZ, ForwardN, FiniteWindow };

// Closed-form weight sequences with decidable summability. Verdicts come from
// per-family rules, never from numeric truncation; a Window profile carries
// data on a finite index range only and yields Undecided verdicts.
class WeightProfile {
public:
    struct Explicit {  // complete finite domain (cycle weights)
        std::map<long long, Rational> w;
    };
    struct Window {  // partial data on a z-line; verdicts refuse
        std::map<long long, Rational> w;
    };
    struct Geometric {  // w_n = a * r^|n|
        Rational a, r;
    };
    struct TwoSided {  // w_0 = c0, w_n = cp*rp^n (n>=1), w_n = cm*rm^|n| (n<=-1)
        Rational c0, cp, rp, cm, rm;
    };
    struct Power {  // w_n = a * (1+|n|)^(-s)
        Rational a, s;
    };
    struct ProductForm {  // w_n = (v_0 ... v_n)^(-p), n >= 0
        ShiftBase base;
        Rational p;
    };

    using Data = std::variant<Explicit, Window, Geometric, TwoSided, Power, ProductForm>;

    WeightProfile(Data data, std::optional<TailCertificate> tail = std::nullopt);

    static WeightProfile explicit_table(std::map<long long, Rational> w);
    static WeightProfile window(std::map<long long, Rational> w);
    static WeightProfile geometric(Rational a, Rational r);
    static WeightProfile two_sided(Rational a_pos, Rational r_pos, Rational a_neg, Rational r_neg,
                                   std::optional<Rational> w0 = std::nullopt);
    static WeightProfile power(Rational a, Rational s);
    static WeightProfile product_form(ShiftBase base, Rational p);

    const Data& data() const { return data_; }
    const std::optional<TailCertificate>& tail() const { return tail_; }
    ProfileDomain domain() const;
    bool in_domain(long long n) const;
    // True when every weight is an exact rational (all families except
    // non-integer-exponent Power/ProductForm).
    bool exact_values() const;

    CertReal weight(long long n, int prec_bits = 96) const;
    std::optional<Rational> weight_exact(long long n) const;

    CertReal partial_sum(long long lo, long long hi, int prec_bits = 96) const;

    SummabilityResult certify_summability(int prec_bits = 96) const;

    // Upper bound on sum over |n| > window_n (two-sided domains) or n > window_n
    // (forward domain); requires a Summable verdict.
    CertReal tail_bound(long long window_n, int prec_bits = 96) const;
    // One-sided versions: sum over n > window_n, resp. n < -window_n.
    CertReal tail_bound_pos(long long window_n, int prec_bits = 96) const;
    CertReal tail_bound_neg(long long window_n, int prec_bits = 96) const;

    // sup over domain of w_{n+step}/w_n for step in {-1, +1}; infinite() set when
    // unbounded (cannot happen for these families), undecided for Window data
    // beyond its range.
    struct RatioBound {
        CertReal value;
        bool undecided = false;
        std::string witness;
    };
    RatioBound sup_step_ratio(int step) const;

    // Profile of the index-reversed line (w'_n = w_{-n}).
    WeightProfile reversed() const;

private:
    void validate() const;
    void validate_tail_certificate() const;

    Data data_;
    std::optional<TailCertificate> tail_;
};

// a * (1 - r^count) / (1 - r), the sum of a geometric block of `count` terms;
// handles r == 1.
Rational geometric_block_sum(const Rational& a, const Rational& r, long long count);

}  // namespace lindyn
