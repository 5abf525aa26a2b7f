#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/weight_profile.hpp"

#include <random>

using namespace lindyn;

namespace {

// mu_3 of the odometer's third coordinate: (1-2^-3)/3 on {0,1,2}, 2^-3/3 on
// {3,4,5}; a probability vector
std::map<long long, Rational> mu3_table() {
    std::map<long long, Rational> w;
    for (long long j = 0; j <= 2; ++j) w[j] = Rational(7, 24);
    for (long long j = 3; j <= 5; ++j) w[j] = Rational(1, 24);
    return w;
}

}  // namespace

TEST_CASE("weight_at follows the family formulas") {
    auto g = WeightProfile::geometric(Rational(1), Rational(1, 2));
    CHECK(*g.weight_exact(-3) == Rational(1, 8));
    CHECK(*g.weight_exact(0) == Rational(1));

    auto e = WeightProfile::explicit_table(mu3_table());
    CHECK(*e.weight_exact(0) == Rational(7, 24));
    CHECK_THROWS_AS(e.weight_exact(9), OutOfDomain);

    auto p = WeightProfile::power(Rational(1), Rational(2));
    CHECK(*p.weight_exact(3) == Rational(1, 16));

    auto pf = WeightProfile::product_form(ShiftBase{ShiftBase::Kind::Const, Rational(2), {}},
                                          Rational(1));
    CHECK(*pf.weight_exact(0) == Rational(1, 2));
    CHECK(*pf.weight_exact(3) == Rational(1, 16));
    CHECK_THROWS_AS(pf.weight_exact(-1), OutOfDomain);
}

TEST_CASE("summability verdicts are decided by family rules") {
    // both-sides geometric ratio 1/2: total 3, the per-atom orbit sum of the
    // grid fixture
    auto two = WeightProfile::two_sided(Rational(1), Rational(1, 2), Rational(1), Rational(1, 2));
    auto s = two.certify_summability();
    REQUIRE(s.summable());
    CHECK(s.total.exact());
    CHECK(s.total.mid == Rational(3));

    auto geo = WeightProfile::geometric(Rational(1), Rational(1, 2));
    auto sg = geo.certify_summability();
    REQUIRE(sg.summable());
    CHECK(sg.total.mid == Rational(3));

    auto flat = WeightProfile::geometric(Rational(1), Rational(1));
    CHECK(flat.certify_summability().divergent());

    auto slow = WeightProfile::power(Rational(1), Rational(1, 2));
    CHECK(slow.certify_summability().divergent());

    auto fast = WeightProfile::power(Rational(1), Rational(2));
    auto sf = fast.certify_summability();
    REQUIRE(sf.summable());
    // total = 2*zeta(2) - 1 ~ 2.2899
    CHECK(sf.total.lower() < Rational(23, 10));
    CHECK(sf.total.upper() > Rational(22, 10));

    auto win = WeightProfile::window({{0, Rational(1)}, {1, Rational(1, 2)}});
    CHECK(win.certify_summability().verdict == Summability::Undecided);

    auto prod2 = WeightProfile::product_form(ShiftBase{ShiftBase::Kind::Const, Rational(2), {}},
                                             Rational(1));
    auto sp = prod2.certify_summability();
    REQUIRE(sp.summable());
    CHECK(sp.total.mid == Rational(1));  // sum 2^{-(n+1)} = 1

    auto prod_flat = WeightProfile::product_form(
        ShiftBase{ShiftBase::Kind::Periodic, Rational(1), {Rational(2), Rational(1, 2)}},
        Rational(1));
    CHECK(prod_flat.certify_summability().divergent());
}

TEST_CASE("divergence of the slow power family is visible in partial sums") {
    auto slow = WeightProfile::power(Rational(1), Rational(1, 2));
    CertReal head = slow.partial_sum(0, 4000, 48);
    // sum_{n<=N} (1+n)^{-1/2} ~ 2 sqrt(N) ~ 126
    CHECK(head.lower() > Rational(100));
}

TEST_CASE("partial sums have exact closed forms") {
    auto g = WeightProfile::geometric(Rational(1), Rational(1, 2));
    CHECK(g.partial_sum(0, 2).mid == Rational(7, 4));
    CHECK(g.partial_sum(-2, 2).mid == Rational(7, 4) + Rational(3, 4));
    CHECK(g.partial_sum(3, 3).mid == *g.weight_exact(3));

    auto e = WeightProfile::explicit_table(mu3_table());
    CHECK(e.partial_sum(0, 5).mid == Rational(1));  // probability vector

    auto two = WeightProfile::two_sided(Rational(1), Rational(1, 3), Rational(2), Rational(1, 2));
    // cross-check against direct enumeration
    Rational direct(0);
    for (long long n = -7; n <= 5; ++n) direct += *two.weight_exact(n);
    CHECK(two.partial_sum(-7, 5).mid == direct);
}

TEST_CASE("partial sums are exactly additive across a split") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> pos(-30, 30);
    auto g = WeightProfile::two_sided(Rational(2, 3), Rational(1, 2), Rational(1), Rational(3, 4));
    for (int t = 0; t < 200; ++t) {
        long long a = pos(rng), b = pos(rng), c = pos(rng);
        long long lo = std::min({a, b, c}), hi = std::max({a, b, c});
        long long mid = a + b + c - lo - hi;
        if (mid == hi) continue;
        Rational left = g.partial_sum(lo, mid).mid;
        Rational right = g.partial_sum(mid + 1, hi).mid;
        CHECK(left + right == g.partial_sum(lo, hi).mid);
    }
}

TEST_CASE("head sums converge monotonically into the certified total") {
    auto g = WeightProfile::geometric(Rational(3, 2), Rational(2, 3));
    auto s = g.certify_summability();
    REQUIRE(s.summable());
    Rational prev(0);
    for (long long n = 1; n <= 40; n *= 2) {
        Rational head = g.partial_sum(-n, n).mid;
        CHECK(head >= prev);
        CHECK(head <= s.total.upper());
        Rational tail = g.tail_bound(n).upper();
        CHECK(s.total.upper() <= head + tail + s.total.rad * 2);
        prev = head;
    }
}

TEST_CASE("tail certificates are validated in closed form") {
    // valid: geometric 1/2 dominated by (1/2)^|n| with c = 1
    CHECK_NOTHROW(WeightProfile(
        WeightProfile::Geometric{Rational(1), Rational(1, 2)},
        TailCertificate{0, Rational(1), Rational(1, 2)}));
    // invalid: claimed ratio decays faster than the family
    CHECK_THROWS_AS(WeightProfile(WeightProfile::Geometric{Rational(1), Rational(1, 2)},
                                  TailCertificate{0, Rational(1), Rational(1, 3)}),
                    InvalidSystem);
    // power never fits under a geometric bound
    CHECK_THROWS_AS(WeightProfile(WeightProfile::Power{Rational(1), Rational(2)},
                                  TailCertificate{4, Rational(10), Rational(1, 2)}),
                    InvalidSystem);
}

TEST_CASE("product-form step ratios match the base sequence") {
    ShiftBase base{ShiftBase::Kind::Periodic, Rational(1), {Rational(2), Rational(3)}};
    auto pf = WeightProfile::product_form(base, Rational(2));
    for (long long n = 0; n < 6; ++n) {
        Rational ratio = *pf.weight_exact(n) / *pf.weight_exact(n + 1);
        CHECK(ratio == pow_int(base.at(n + 1), 2));
    }
    auto rb = pf.sup_step_ratio(-1);
    CHECK(rb.value.mid == Rational(9));  // sup v^p = 3^2
}

TEST_CASE("reversal flips the index") {
    auto two = WeightProfile::two_sided(Rational(1), Rational(1, 2), Rational(3), Rational(1, 4),
                                        Rational(5));
    auto rev = two.reversed();
    for (long long n = -6; n <= 6; ++n) CHECK(*rev.weight_exact(n) == *two.weight_exact(-n));
    CHECK_THROWS_AS(WeightProfile::product_form(
                        ShiftBase{ShiftBase::Kind::Const, Rational(2), {}}, Rational(1))
                        .reversed(),
                    UnsupportedCombination);
}

TEST_CASE("profiles reject nonpositive weights") {
    CHECK_THROWS_AS(WeightProfile::geometric(Rational(0), Rational(1, 2)), InvalidSystem);
    CHECK_THROWS_AS(WeightProfile::geometric(Rational(1), Rational(-1)), InvalidSystem);
    CHECK_THROWS_AS(WeightProfile::explicit_table({{0, Rational(-1)}}), InvalidSystem);
}
