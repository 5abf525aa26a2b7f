#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/affine.hpp"

#include <cmath>

using namespace lindyn;
using namespace lindyn::affine;

namespace {

double to_d(const Rational& q) { return q.convert_to<double>(); }

// Simpson quadrature of e^{-|t|}/2 over [lo, hi], test-side oracle
double quad_measure(double lo, double hi, int steps = 4000) {
    auto f = [](double t) { return 0.5 * std::exp(-std::fabs(t)); };
    double h = (hi - lo) / steps;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < steps; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("the distribution function is a cdf and rays have closed measures") {
    // F(0) = 1/2 on both branches
    CHECK(compare(distribution_value(Rational(0)), ExpSum(Rational(1, 2))) == 0);
    CHECK(compare(ray_measure_above(Rational(0)), ExpSum(Rational(1, 2))) == 0);
    // monotone
    Rational prev(-1);
    for (int t = -6; t <= 6; ++t) {
        Rational v = distribution_value(Rational(t)).eval(64).mid;
        CHECK(v > prev);
        prev = v;
    }
    // full line mass is 1: below(t) + above(t) = 1 exactly
    for (int t = -4; t <= 4; ++t) {
        ExpSum total = ray_measure_below(Rational(t)) + ray_measure_above(Rational(t));
        CHECK(compare(total, ExpSum(Rational(1))) == 0);
    }
}

TEST_CASE("interval measures match the antiderivative and quadrature") {
    // mu([0,1]) = (1 - e^-1)/2
    auto m = IntervalSet::of(Rational(0), Rational(1)).measure(96);
    double expected = (1.0 - std::exp(-1.0)) / 2.0;
    CHECK(to_d(m.lower()) <= expected);
    CHECK(to_d(m.upper()) >= expected);
    CHECK(std::fabs(to_d(m.mid) - quad_measure(0, 1)) < 1e-6);

    // additivity with exact telescoping
    auto ab = IntervalSet::of(Rational(-2), Rational(3)).measure_sum();
    auto a = IntervalSet::of(Rational(-2), Rational(0)).measure_sum();
    auto b = IntervalSet::of(Rational(0), Rational(3)).measure_sum();
    CHECK((ab - (a + b)).is_zero());

    // canonicalization merges touching pieces
    IntervalSet s({Interval{Rational(0), Rational(1)}, Interval{Rational(1), Rational(2)},
                   Interval{Rational(5), Rational(6)}});
    CHECK(s.parts().size() == 2);
    CHECK(s.total_length() == Rational(3));

    // two-route pushforward: image endpoints vs quadrature
    AffineMap f(Rational(1, 2), Rational(1));
    Interval j{Rational(-1), Rational(2)};
    auto img = f.image(j);
    double route1 = to_d(IntervalSet({img}).measure(96).mid);
    double route2 = quad_measure(to_d(img.lo), to_d(img.hi));
    CHECK(std::fabs(route1 - route2) < 1e-6);
}

TEST_CASE("translation by one contracts measures by exactly e^{-1} on the right half line") {
    AffineMap f(Rational(1), Rational(1));
    // mu(f([0,1]))/mu([0,1]) = e^{-1} exactly: the symbolic margin vanishes
    ExpSum mu_j = IntervalSet::of(Rational(0), Rational(1)).measure_sum();
    ExpSum mu_fj = IntervalSet::of(Rational(1), Rational(2)).measure_sum();
    ExpSum margin = mu_fj - mu_j.scaled(Rational(1), Rational(-1));
    CHECK(margin.is_zero());
}

TEST_CASE("random interval sweep never violates the contraction bound") {
    AffineMap f1(Rational(1), Rational(1));
    auto r1 = star_bound_check(f1, 200, 99);
    CHECK(r1.violations == 0);
    CHECK(r1.min_margin_lower >= 0);
    CHECK(to_d(r1.bound.mid) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

    AffineMap f2(Rational(1, 2), Rational(0));
    auto r2 = star_bound_check(f2, 200, 7);
    CHECK(r2.violations == 0);
    // symmetric intervals give ratios strictly above 1/2
    ExpSum mu_j = IntervalSet::of(Rational(-2), Rational(2)).measure_sum();
    ExpSum mu_fj = IntervalSet::of(Rational(-1), Rational(1)).measure_sum();
    ExpSum margin = mu_fj - mu_j.scaled(Rational(1, 2));
    CHECK(margin.sign() == 1);

    AffineMap f3(Rational(-2, 3), Rational(5, 7));
    auto r3 = star_bound_check(f3, 300, 1234);
    CHECK(r3.violations == 0);
}

TEST_CASE("recurrence trichotomy") {
    auto r1 = recurrent_set(AffineMap(Rational(1), Rational(2)));
    CHECK(r1.kind == RecurrentKind::Empty);

    auto r2 = recurrent_set(AffineMap(Rational(1, 2), Rational(1)));
    CHECK(r2.kind == RecurrentKind::SinglePoint);
    CHECK(*r2.fixed_point == Rational(2));

    auto r3 = recurrent_set(AffineMap(Rational(-1), Rational(0)));
    CHECK(r3.kind == RecurrentKind::AllOfR);
    CHECK_THROWS_AS(sc_witness(AffineMap(Rational(-1), Rational(3)),
                               IntervalSet::of(Rational(0), Rational(1)), Rational(1, 10)),
                    InvolutionUnsupported);
}

TEST_CASE("translation witness: unit intervals tile the line into total mass one") {
    AffineMap f(Rational(1), Rational(1));
    auto rep = sc_witness(f, IntervalSet::of(Rational(0), Rational(1)), Rational(1, 100), 40);
    CHECK(rep.delta == Rational(0));  // no fixed point, B' = B
    CHECK(rep.removed_measure.mid == Rational(0));
    // head sums increase monotonically and stay below the closed-form total 1
    Rational prev(0);
    for (const auto& [n, v] : rep.head_sums) {
        CHECK(v.mid >= prev);
        prev = v.mid;
        CHECK(v.upper() <= Rational(1) + Rational(1, Int(1) << 40));
    }
    // head + tail pins the closed-form value within 1e-9
    Rational one(1);
    CHECK(abs_rat(rep.total_upper.mid - one) < Rational(1, Int(1000000000)));
    CHECK(rep.total_upper.upper() >= one - Rational(1, Int(1) << 40));
}

TEST_CASE("contraction witness: away from the fixed point everything is summable") {
    // fixed point 0 is outside B: nothing is removed
    AffineMap f(Rational(1, 2), Rational(0));
    auto rep = sc_witness(f, IntervalSet::of(Rational(1), Rational(2)), Rational(1, 100), 24);
    CHECK(rep.delta == Rational(0));
    CHECK(rep.removed_measure.mid == Rational(0));
    CHECK(rep.total_upper.upper() < Rational(3));  // comfortably finite

    // fixed point inside B: a dyadic neighborhood is cut, costing < eps
    auto rep2 = sc_witness(f, IntervalSet::of(Rational(-1), Rational(1)), Rational(1, 20), 24);
    CHECK(rep2.delta > 0);
    CHECK(rep2.removed_measure.upper() < Rational(1, 20));
    CHECK(rep2.b_prime.parts().size() == 2);
    CHECK(rep2.total_upper.upper() < Rational(4));

    // affine with a shifted fixed point
    AffineMap g(Rational(1, 2), Rational(1));  // fixed point 2
    auto rep3 = sc_witness(g, IntervalSet::of(Rational(0), Rational(3)), Rational(1, 50), 24);
    CHECK(rep3.delta > 0);
    CHECK(rep3.removed_measure.upper() < Rational(1, 50));
    CHECK(rep3.total_upper.upper() < Rational(8));
}

TEST_CASE("affine map input validation") {
    CHECK_THROWS(AffineMap(Rational(0), Rational(1)));
    CHECK_THROWS(AffineMap(Rational(3, 2), Rational(1)));
    CHECK_THROWS(AffineMap(Rational(1), Rational(0)));
    CHECK_NOTHROW(AffineMap(Rational(-1), Rational(0)));  // involution allowed, flagged later

    AffineMap neg(Rational(-1, 2), Rational(0));
    Interval j{Rational(2), Rational(4)};
    auto img = neg.image(j);
    CHECK(img.lo == Rational(-2));
    CHECK(img.hi == Rational(-1));
    // iterate composes exactly
    auto once = neg.image(neg.image(j));
    auto twice = neg.iterate(j, 2);
    CHECK(once.lo == twice.lo);
    CHECK(once.hi == twice.hi);
}
