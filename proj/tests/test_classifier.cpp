#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/classifier.hpp"
#include "lindyn/json_io.hpp"
#include "generators.hpp"

using namespace lindyn;

namespace {

AtomicSystem flat_line() {
    std::vector<OrbitSpec> orbits{OrbitSpec{
        OrbitKind::ZLine, 0, WeightProfile::geometric(Rational(1), Rational(1)), Copies::one()}};
    return AtomicSystem(std::move(orbits), Rational(1));
}

void check_report_invariants(const ClassificationReport& rep) {
    // summability holds => all three dynamic verdicts are yes
    if (rep.sc == ScResult::Verdict::Holds) {
        CHECK(rep.chaotic.verdict == Verdict3::Yes);
        CHECK(rep.frequently_hypercyclic.verdict == Verdict3::Yes);
        CHECK(rep.topologically_mixing.verdict == Verdict3::Yes);
    }
    // dissipative and chaotic => summability holds
    if (rep.dissipative.verdict == Verdict3::Yes && rep.chaotic.verdict == Verdict3::Yes)
        CHECK(rep.sc == ScResult::Verdict::Holds);
    // finite measure and dissipative => summability holds
    if (rep.mu_finite.verdict == Verdict3::Yes && rep.dissipative.verdict == Verdict3::Yes)
        CHECK(rep.sc == ScResult::Verdict::Holds);
    // bounded distortion: frequent hypercyclicity tracks summability
    if (rep.distortion == ClassificationReport::Distortion::Finite &&
        rep.dissipative.verdict == Verdict3::Yes && rep.sc != ScResult::Verdict::Undecided) {
        Verdict3 expected =
            rep.sc == ScResult::Verdict::Holds ? Verdict3::Yes : Verdict3::No;
        CHECK(rep.frequently_hypercyclic.verdict == expected);
        CHECK(rep.chaotic.verdict == expected);
    }
    // ergodic atomic: frequent hypercyclicity iff chaotic iff finite measure
    if (rep.ergodic_dissipative.verdict == Verdict3::Yes &&
        rep.mu_finite.verdict != Verdict3::Unknown && rep.sc != ScResult::Verdict::Undecided) {
        CHECK(rep.frequently_hypercyclic.verdict == rep.chaotic.verdict);
        Verdict3 expected = rep.mu_finite.verdict == Verdict3::Yes ? Verdict3::Yes : Verdict3::No;
        CHECK(rep.frequently_hypercyclic.verdict == expected);
    }
    // forbidden combinations
    CHECK_FALSE((rep.sc == ScResult::Verdict::Holds &&
                 rep.frequently_hypercyclic.verdict == Verdict3::No));
    CHECK_FALSE((rep.dissipative.verdict == Verdict3::No && rep.sc == ScResult::Verdict::Holds));
}

}  // namespace

TEST_CASE("the infinite grid is fully chaotic via the summability route") {
    auto rep = classify(AtomicSystem::grid_lines());
    CHECK(rep.dissipative.verdict == Verdict3::Yes);
    CHECK(rep.sc == ScResult::Verdict::Holds);
    CHECK(rep.mu_finite.verdict == Verdict3::No);
    CHECK(rep.chaotic.verdict == Verdict3::Yes);
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::Yes);
    CHECK(rep.topologically_mixing.verdict == Verdict3::Yes);
    CHECK(rep.chaotic.rule == Rule::SummabilityCriterion);
    CHECK_FALSE(rep.has_unknowns());
    check_report_invariants(rep);
}

TEST_CASE("the measure-preserving line fails by the ergodic finiteness rule") {
    auto rep = classify(flat_line());
    CHECK(rep.dissipative.verdict == Verdict3::Yes);
    CHECK(rep.ergodic_dissipative.verdict == Verdict3::Yes);
    CHECK(rep.mu_finite.verdict == Verdict3::No);
    CHECK(rep.sc == ScResult::Verdict::Fails);
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(rep.frequently_hypercyclic.rule == Rule::ErgodicAtomicEquivalence);
    CHECK(rep.chaotic.verdict == Verdict3::No);
    check_report_invariants(rep);
}

TEST_CASE("finite cyclic permutations have no dense orbits") {
    auto sys = AtomicSystem::from_permutation({1, 2, 3, 0},
                                              {Rational(1), Rational(1), Rational(1), Rational(1)},
                                              Rational(1));
    auto rep = classify(sys);
    CHECK(rep.dissipative.verdict == Verdict3::No);
    CHECK(rep.sc == ScResult::Verdict::Fails);
    CHECK(rep.chaotic.verdict == Verdict3::No);
    CHECK(rep.chaotic.rule == Rule::PeriodicFactorObstruction);
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(rep.topologically_mixing.verdict == Verdict3::No);
    check_report_invariants(rep);
}

TEST_CASE("honest unknowns: necessary condition passes without bounded distortion") {
    // one certified line and one flat line: summability fails, distortion is
    // unbounded across the two decay classes, and the heaviest line's d_n
    // series converges, so no implemented rule decides frequent hypercyclicity
    std::vector<OrbitSpec> orbits;
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1), Rational(1, 2)),
                               Copies::one()});
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1, 2), Rational(1)),
                               Copies::one()});
    auto rep = classify(AtomicSystem(std::move(orbits), Rational(1)));
    CHECK(rep.sc == ScResult::Verdict::Fails);
    CHECK(rep.chaotic.verdict == Verdict3::No);
    CHECK(rep.distortion == ClassificationReport::Distortion::Unbounded);
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::Unknown);
    CHECK(rep.has_unknowns());
    check_report_invariants(rep);
}

TEST_CASE("window data yields undecided verdicts, never guesses") {
    std::vector<OrbitSpec> orbits{OrbitSpec{
        OrbitKind::ZLine, 0,
        WeightProfile::window({{-1, Rational(1)}, {0, Rational(1)}, {1, Rational(1, 2)}}),
        Copies::one()}};
    auto rep = classify(AtomicSystem(std::move(orbits), Rational(1)));
    CHECK(rep.sc == ScResult::Verdict::Undecided);
    CHECK(rep.has_undecided());
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::Unknown);
}

TEST_CASE("classification is deterministic") {
    auto a = classification_to_json(classify(AtomicSystem::grid_lines()));
    auto b = classification_to_json(classify(AtomicSystem::grid_lines()));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("inverse pairing agrees on symmetric and asymmetric summable lines") {
    auto sym = classify_inverse_pair(AtomicSystem::grid_lines(Rational(1), Copies::one()));
    CHECK(sym.fh_agree);
    CHECK(sym.chaotic_agree);
    CHECK(sym.forward.frequently_hypercyclic.verdict == Verdict3::Yes);

    std::vector<OrbitSpec> orbits{OrbitSpec{
        OrbitKind::ZLine, 0,
        WeightProfile::two_sided(Rational(1), Rational(1, 2), Rational(2), Rational(1, 4)),
        Copies::one()}};
    auto asym = classify_inverse_pair(AtomicSystem(std::move(orbits), Rational(1)));
    CHECK(asym.fh_agree);
    CHECK(asym.chaotic_agree);

    auto flat = classify_inverse_pair(flat_line());
    CHECK(flat.fh_agree);
    CHECK(flat.forward.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(flat.inverse.frequently_hypercyclic.verdict == Verdict3::No);
}

TEST_CASE("report invariants hold across random systems") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        auto sys = testgen::random_system(rng);
        auto rep = classify(sys);
        check_report_invariants(rep);
    }
}

TEST_CASE("forward systems use only the forward necessary condition") {
    std::vector<OrbitSpec> shrink{OrbitSpec{
        OrbitKind::ZLine, 0,
        WeightProfile::product_form(ShiftBase{ShiftBase::Kind::Const, Rational(1, 2), {}},
                                    Rational(1)),
        Copies::one()}};
    auto rep = classify(AtomicSystem(std::move(shrink), Rational(1), SystemMode::Forward));
    CHECK(rep.frequently_hypercyclic.verdict == Verdict3::No);
    CHECK(rep.frequently_hypercyclic.rule == Rule::ForwardNecessarySummableDn);

    std::vector<OrbitSpec> grow{OrbitSpec{
        OrbitKind::ZLine, 0,
        WeightProfile::product_form(ShiftBase{ShiftBase::Kind::Const, Rational(2), {}}, Rational(1)),
        Copies::one()}};
    auto rep2 = classify(AtomicSystem(std::move(grow), Rational(1), SystemMode::Forward));
    CHECK(rep2.frequently_hypercyclic.verdict == Verdict3::Unknown);
}
