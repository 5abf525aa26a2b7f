#pragma once

#include "lindyn/classifier.hpp"

namespace lindyn {

// Weighted backward shift data: a bounded positive weight family together
// with the sequence-space mode.
struct ShiftWeights {
    enum class Mode { Unilateral, Bilateral };
    Mode mode = Mode::Unilateral;
    ShiftBase w;
};

// Measure-level dictionary. Unilateral: X = N with f(i) = i+1 in forward mode
// and mu({i}) = (w_0...w_i)^{-p}. Bilateral: X = Z with mu({0}) = 1 and
// mu({i}) = (product of the |i| weights between 0 and i)^{-p} on both sides,
// so both tails decay exactly when the corresponding weight products grow.
AtomicSystem shift_to_system(const ShiftWeights& sw, const Rational& p);

// Forward weight entries w_1..w_count recovered from a single-line system via
// w_{i+1} = (mu_i / mu_{i+1})^{1/p}; exact for p = 1.
std::vector<CertReal> system_to_shift(const AtomicSystem& sys, long long count,
                                      int prec_bits = 96);

ClassificationReport classify_shift(const ShiftWeights& sw, const Rational& p);

}  // namespace lindyn
