#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/shift_bridge.hpp"

using namespace lindyn;

namespace {
ShiftWeights const_shift(ShiftWeights::Mode mode, Rational v) {
    ShiftWeights sw;
    sw.mode = mode;
    sw.w.kind = ShiftBase::Kind::Const;
    sw.w.value = std::move(v);
    return sw;
}
}  // namespace

TEST_CASE("the unilateral dictionary is the inverse product formula") {
    auto sys = shift_to_system(const_shift(ShiftWeights::Mode::Unilateral, Rational(2)),
                               Rational(1));
    CHECK_FALSE(sys.bijective());
    for (long long i = 0; i <= 8; ++i)
        CHECK(*sys.measure_exact(Atom{0, 0, i}) == pow_int(Rational(1, 2), i + 1));

    auto flat = shift_to_system(const_shift(ShiftWeights::Mode::Unilateral, Rational(1)),
                                Rational(2));
    for (long long i = 0; i <= 8; ++i) CHECK(*flat.measure_exact(Atom{0, 0, i}) == Rational(1));
}

TEST_CASE("the bilateral dictionary decays in both directions") {
    auto sys = shift_to_system(const_shift(ShiftWeights::Mode::Bilateral, Rational(2)),
                               Rational(1));
    CHECK(sys.bijective());
    CHECK(*sys.measure_exact(Atom{0, 0, 0}) == Rational(1));
    for (long long i = -6; i <= 6; ++i)
        CHECK(*sys.measure_exact(Atom{0, 0, i}) == pow_int(Rational(1, 2), i < 0 ? -i : i));
    CHECK_THROWS_AS(shift_to_system(const_shift(ShiftWeights::Mode::Bilateral, Rational(2)),
                                    Rational(3, 2)),
                    UnsupportedCombination);
}

TEST_CASE("round trip recovers the forward weights") {
    auto sw = const_shift(ShiftWeights::Mode::Unilateral, Rational(3, 2));
    auto sys = shift_to_system(sw, Rational(2));
    auto back = system_to_shift(sys, 6);
    for (const auto& w : back) {
        CHECK(w.exact());
        CHECK(w.mid == Rational(3, 2));
    }

    auto bsys = shift_to_system(const_shift(ShiftWeights::Mode::Bilateral, Rational(2)),
                                Rational(1));
    auto bback = system_to_shift(bsys, 5);
    for (const auto& w : bback) CHECK(w.mid == Rational(2));
}

TEST_CASE("classification through the dictionary matches the finiteness rule") {
    // growing products: finite measure, fully chaotic
    auto yes = classify_shift(const_shift(ShiftWeights::Mode::Bilateral, Rational(2)), Rational(1));
    CHECK(yes.frequently_hypercyclic.verdict == Verdict3::Yes);
    CHECK(yes.chaotic.verdict == Verdict3::Yes);
    CHECK(yes.mu_finite.verdict == Verdict3::Yes);

    // the isometric shift: infinite flat measure, nothing chaotic
    auto no = classify_shift(const_shift(ShiftWeights::Mode::Bilateral, Rational(1)), Rational(1));
    CHECK(no.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(no.chaotic.verdict == Verdict3::No);
    CHECK(no.mu_finite.verdict == Verdict3::No);

    // unilateral shrinking weights: the forward necessary condition fails
    auto uni = classify_shift(const_shift(ShiftWeights::Mode::Unilateral, Rational(1, 2)),
                              Rational(1));
    CHECK(uni.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(uni.frequently_hypercyclic.rule == Rule::ForwardNecessarySummableDn);

    // bilateral verdicts pair frequent hypercyclicity with chaos on every
    // decidable constant family
    for (int num = 1; num <= 6; ++num) {
        for (int den = 1; den <= 3; ++den) {
            auto rep = classify_shift(
                const_shift(ShiftWeights::Mode::Bilateral, Rational(num, den)), Rational(1));
            if (rep.frequently_hypercyclic.verdict == Verdict3::Unknown) continue;
            CHECK(rep.frequently_hypercyclic.verdict == rep.chaotic.verdict);
            CHECK((rep.mu_finite.verdict == Verdict3::Yes) ==
                  (rep.frequently_hypercyclic.verdict == Verdict3::Yes));
        }
    }
}

TEST_CASE("verdicts are stable under weight scaling that preserves summability") {
    auto a = classify_shift(const_shift(ShiftWeights::Mode::Bilateral, Rational(2)), Rational(1));
    auto b = classify_shift(const_shift(ShiftWeights::Mode::Bilateral, Rational(3)), Rational(1));
    auto c = classify_shift(const_shift(ShiftWeights::Mode::Bilateral, Rational(5, 2)), Rational(2));
    CHECK(a.frequently_hypercyclic.verdict == b.frequently_hypercyclic.verdict);
    CHECK(a.frequently_hypercyclic.verdict == c.frequently_hypercyclic.verdict);

    auto u1 = classify_shift(const_shift(ShiftWeights::Mode::Unilateral, Rational(1, 2)),
                             Rational(1));
    auto u2 = classify_shift(const_shift(ShiftWeights::Mode::Unilateral, Rational(1, 3)),
                             Rational(2));
    CHECK(u1.frequently_hypercyclic.verdict == u2.frequently_hypercyclic.verdict);
}

TEST_CASE("periodic unilateral weights with unit period product fail the necessary condition") {
    ShiftWeights sw;
    sw.mode = ShiftWeights::Mode::Unilateral;
    sw.w.kind = ShiftBase::Kind::Periodic;
    sw.w.pattern = {Rational(2), Rational(1, 2)};
    auto rep = classify_shift(sw, Rational(1));
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::No);

    // growing period product: summable masses, necessary condition passes
    sw.w.pattern = {Rational(2), Rational(3, 2)};
    auto rep2 = classify_shift(sw, Rational(1));
    CHECK(rep2.frequently_hypercyclic.verdict == Verdict3::Unknown);
    CHECK(rep2.mu_finite.verdict == Verdict3::Yes);
}

TEST_CASE("the dictionary refuses multi-line systems") {
    std::vector<OrbitSpec> two;
    for (int i = 0; i < 2; ++i)
        two.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                                WeightProfile::geometric(Rational(1), Rational(1, 2)),
                                Copies::one()});
    AtomicSystem sys(std::move(two), Rational(1));
    CHECK_THROWS_AS(system_to_shift(sys, 4), UnsupportedCombination);
}
