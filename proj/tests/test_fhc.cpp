#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindyn/fhc.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

using namespace lindyn;

namespace {

AtomicSystem single_line(Rational p = Rational(2)) {
    std::vector<OrbitSpec> orbits{OrbitSpec{
        OrbitKind::ZLine, 0, WeightProfile::geometric(Rational(1), Rational(1, 2)), Copies::one()}};
    return AtomicSystem(std::move(orbits), std::move(p));
}

}  // namespace

TEST_CASE("schedule slots are disjoint, separated and dense enough") {
    const long long horizon = 100000;
    for (int k_total : {1, 2, 4}) {
        FrequencySchedule sched(k_total);
        std::vector<std::pair<long long, int>> members;  // (n, slot)
        for (int k = 1; k <= k_total; ++k)
            for (long long n : sched.slot_elements(k, 1, horizon)) members.push_back({n, k});
        std::sort(members.begin(), members.end());
        // disjoint: no n appears twice
        for (size_t i = 1; i < members.size(); ++i)
            CHECK(members[i].first != members[i - 1].first);
        // separation: |n - m| >= max(k, l) for neighbors (suffices: distances
        // only grow further apart)
        for (size_t i = 1; i < members.size(); ++i) {
            long long gap = members[i].first - members[i - 1].first;
            CHECK(gap >= std::max(members[i].second, members[i - 1].second));
        }
        // density: #(A_k cap [1, N]) / N >= 0.9 * delta_k at the horizon
        for (int k = 1; k <= k_total; ++k) {
            auto el = sched.slot_elements(k, 1, horizon);
            Rational measured(static_cast<long long>(el.size()), horizon);
            CHECK(measured >= sched.designed_density(k) * Rational(9, 10));
        }
    }
}

TEST_CASE("schedule membership matches enumeration") {
    FrequencySchedule sched(3);
    for (int k = 1; k <= 3; ++k) {
        auto el = sched.slot_elements(k, 1, 5000);
        std::set<long long> elems(el.begin(), el.end());
        for (long long n = 1; n <= 5000; ++n)
            CHECK(sched.member(k, n) == (elems.count(n) > 0));
    }
}

TEST_CASE("the dense family enumerates reduced rational vectors reproducibly") {
    auto sys = single_line();
    DenseFamily fam(sys);
    auto y1 = fam.member(1);
    CHECK(y1 == LpVector::indicator(Atom{0, 0, 0}));
    auto batch1 = fam.members(40);
    auto batch2 = fam.members(40);
    for (size_t i = 0; i < batch1.size(); ++i) CHECK(batch1[i] == batch2[i]);
    // all distinct
    for (size_t i = 0; i < batch1.size(); ++i)
        for (size_t j = i + 1; j < batch1.size(); ++j) CHECK_FALSE(batch1[i] == batch1[j]);
    // every member is certified: unconditional convergence both ways
    for (int i = 1; i <= 10; ++i) CHECK_NOTHROW(verify_unconditional(sys, fam.member(i)));
}

TEST_CASE("family construction requires a certified line") {
    std::vector<OrbitSpec> flat{OrbitSpec{
        OrbitKind::ZLine, 0, WeightProfile::geometric(Rational(1), Rational(1)), Copies::one()}};
    AtomicSystem sys(std::move(flat), Rational(2));
    CHECK_THROWS_AS(DenseFamily{sys}, SCRequired);
}

TEST_CASE("the constructed vector is the slot translate sum") {
    auto sys = single_line();
    DenseFamily fam(sys);
    FrequencySchedule sched(1);
    long long horizon = 4000;
    auto built = construct_fh_vector(sys, fam, sched, horizon);
    auto slot1 = sched.slot_elements(1, 1, horizon);
    CHECK(built.vec.amp.size() == slot1.size());
    for (long long n : slot1) CHECK(built.vec.at(Atom{0, 0, n}) == Rational(1));
    CHECK(built.support_collisions == 0);
    CHECK(built.tail_norm_bound.upper() > 0);

    // empty schedule gives the zero vector
    auto none = construct_fh_vector(sys, fam, FrequencySchedule(0), horizon);
    CHECK(none.vec.zero());

    // tail bound shrinks as the horizon grows
    auto bigger = construct_fh_vector(sys, fam, sched, 2 * horizon);
    CHECK(bigger.tail_norm_bound.upper() <= built.tail_norm_bound.upper());
}

TEST_CASE("construction refuses systems without the summability certificate") {
    std::vector<OrbitSpec> orbits;
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1), Rational(1, 2)),
                               Copies::one()});
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1), Rational(1)), Copies::one()});
    AtomicSystem sys(std::move(orbits), Rational(2));
    DenseFamily fam(sys);  // the certified line alone is fine
    CHECK_THROWS_AS(construct_fh_vector(sys, fam, FrequencySchedule(1), 100), SCRequired);
}

TEST_CASE("unconditional convergence certificates from orbit summability") {
    auto grid = AtomicSystem::grid_lines();
    auto cert = verify_unconditional(grid, LpVector::indicator(Atom{0, 0, 0}));
    CHECK(cert.t_series_pow_sum.exact());
    CHECK(cert.t_series_pow_sum.mid == Rational(1));  // sum_{n>=1} 2^{-n}
    CHECK(cert.s_series_pow_sum.mid == Rational(1));
    CHECK_FALSE(cert.orlicz_applicable);  // p = 1

    auto zero = verify_unconditional(grid, LpVector{});
    CHECK(zero.t_series_pow_sum.mid == Rational(0));
    CHECK(zero.s_series_pow_sum.mid == Rational(0));

    // p >= 2 flips the converse-direction flag
    auto sys2 = single_line(Rational(2));
    auto cert2 = verify_unconditional(sys2, LpVector::indicator(Atom{0, 0, 0}));
    CHECK(cert2.orlicz_applicable);

    // cycle support is refused: iterate norms recur
    auto cyc = AtomicSystem::from_permutation({1, 0}, {Rational(1), Rational(1)}, Rational(2));
    CHECK_THROWS_AS(verify_unconditional(cyc, LpVector::indicator(Atom{0, 0, 0})),
                    TailNotCertified);
}

TEST_CASE("TS is the identity on family members") {
    auto sys = single_line();
    DenseFamily fam(sys);
    for (int i = 1; i <= 20; ++i) {
        auto y = fam.member(i);
        for (long long n : {1ll, 5ll, 17ll}) CHECK(apply_T(sys, apply_S(sys, y, n), n) == y);
    }
}

TEST_CASE("empirical run: slot-one target is visited at its designed rate") {
    auto sys = single_line(Rational(2));
    DenseFamily fam(sys);
    FrequencySchedule sched(1);
    long long horizon = 20000;
    auto built = construct_fh_vector(sys, fam, sched, horizon);
    auto rep = empirical_fh_check(sys, built.vec, {fam.member(1)}, Rational(1, 10), horizon,
                                  {Atom{0, 0, 0}});
    Rational half_delta = sched.designed_density(1) / 2;
    CHECK(rep.min_lower_density >= half_delta.convert_to<double>());
    CHECK(rep.lemma_bound_respected);
    for (const auto& [n, s] : rep.lemma_sums) CHECK(s.upper() < 2);

    // a huge ball is hit on every step
    auto all = empirical_fh_check(sys, built.vec, {fam.member(1)}, Rational(1000), 1000,
                                  {Atom{0, 0, 0}});
    CHECK(all.curves.front().hits.size() == 1000);
    CHECK(all.min_lower_density == doctest::Approx(1.0));
}

TEST_CASE("cross-slot support collisions respect the separation rule") {
    auto sys = single_line();
    DenseFamily fam(sys);
    FrequencySchedule sched(2);
    auto built = construct_fh_vector(sys, fam, sched, 20000);
    // members 1 and 2 are single-atom vectors at the base: collisions would
    // need two slots to meet, which separation forbids
    long long w1 = 0, w2 = 0;
    for (const auto& [a, v] : built.members[0].amp) w1 = std::max(w1, std::abs(a.index));
    for (const auto& [a, v] : built.members[1].amp) w2 = std::max(w2, std::abs(a.index));
    if (w1 + w2 < 2) CHECK(built.support_collisions == 0);
}
