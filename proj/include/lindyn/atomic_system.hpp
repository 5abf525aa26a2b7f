#pragma once

#include "lindyn/weight_profile.hpp"

#include <compare>
#include <string>
#include <vector>

namespace lindyn {

enum class OrbitKind { ZLine, Cycle };
enum class SystemMode { Bijective, Forward };

// Orbit multiplicity; "infinite" models countably many identical copies
// (distinct copies never interact under f).
struct Copies {
    bool infinite = false;
    long long count = 1;
    static Copies one() { return {false, 1}; }
    static Copies finite(long long n) { return {false, n}; }
    static Copies unbounded() { return {true, 0}; }
};

struct Atom {
    int orbit = 0;
    long long copy = 0;
    long long index = 0;
    auto operator<=>(const Atom&) const = default;
    std::string str() const;
};

struct OrbitSpec {
    OrbitKind kind = OrbitKind::ZLine;
    long long cycle_length = 0;  // Cycle only
    WeightProfile weights;
    Copies copies = Copies::one();
};

struct HopfDecomposition {
    std::vector<int> conservative_orbits;  // cycles
    std::vector<int> dissipative_orbits;   // lines
};

struct StarResult {
    CertReal c;
    bool finite = true;
    bool undecided = false;
    std::string witness;
};

struct TotalMeasureResult {
    bool finite = false;
    bool undecided = false;
    CertReal value;
    std::string reason;
};

// A countable atomic measure space with a bijection in orbit-normal form:
// finitely many orbit specs, each a cycle or a line, possibly replicated.
// Immutable after construction.
class AtomicSystem {
public:
    AtomicSystem(std::vector<OrbitSpec> orbits, Rational p,
                 SystemMode mode = SystemMode::Bijective);

    const std::vector<OrbitSpec>& orbits() const { return orbits_; }
    const OrbitSpec& orbit(int id) const { return orbits_.at(static_cast<size_t>(id)); }
    const Rational& p() const { return p_; }
    SystemMode mode() const { return mode_; }
    bool bijective() const { return mode_ == SystemMode::Bijective; }
    // True when some profile is a data window: verdict operations are refused.
    bool partial() const { return partial_; }

    void check_atom(const Atom& a) const;
    Atom successor(const Atom& a) const;
    Atom predecessor(const Atom& a) const;  // throws ForwardOnly at a line start
    Atom iterate(const Atom& a, long long n) const;
    bool iterate_defined(const Atom& a, long long n) const;

    CertReal measure(const Atom& a, int prec_bits = 96) const;
    std::optional<Rational> measure_exact(const Atom& a) const;

    HopfDecomposition hopf_decompose() const;
    StarResult star_constant() const;
    TotalMeasureResult total_measure() const;
    bool is_ergodic_dissipative() const;  // throws NotDissipative if a cycle exists

    // Full orbit sum through one atom of orbit `id`: sum over n in Z (or N in
    // forward mode) of mu(f^n x); independent of the atom chosen on the orbit.
    SummabilityResult orbit_sum(int id, int prec_bits = 96) const;

    // Throws NotWandering unless the translates of `atoms` are pairwise disjoint.
    void require_wandering(const std::vector<Atom>& atoms) const;

    // Index-reversed twin presenting f^{-1} in orbit-normal form.
    AtomicSystem reversed() const;

    // Finite explicit permutation converted to cycles by traversal; weights
    // are per-point measures.
    static AtomicSystem from_permutation(const std::vector<int>& perm,
                                         const std::vector<Rational>& weights, Rational p);

    // The dissipative infinite-measure fixture: countably many identical
    // lines with mu = 2^{-|j|} along each.
    static AtomicSystem grid_lines(Rational p = Rational(1), Copies copies = Copies::unbounded());

private:
    void validate() const;

    std::vector<OrbitSpec> orbits_;
    Rational p_;
    SystemMode mode_;
    bool partial_ = false;
};

}  // namespace lindyn
