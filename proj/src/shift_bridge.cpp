#include "lindyn/shift_bridge.hpp"

namespace lindyn {

AtomicSystem shift_to_system(const ShiftWeights& sw, const Rational& p) {
    if (sw.mode == ShiftWeights::Mode::Unilateral) {
        std::vector<OrbitSpec> orbits;
        orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                                   WeightProfile::product_form(sw.w, p), Copies::one()});
        return AtomicSystem(std::move(orbits), p, SystemMode::Forward);
    }
    // bilateral: const weights with integer p map onto a geometric profile
    if (sw.w.kind != ShiftBase::Kind::Const || !is_integer(p))
        throw UnsupportedCombination(
            "bilateral mode supports constant weight families with integer p");
    Rational ratio = pow_int(sw.w.value, -to_ll(numerator(p)));
    std::vector<OrbitSpec> orbits;
    orbits.push_back(OrbitSpec{OrbitKind::ZLine, 0,
                               WeightProfile::geometric(Rational(1), ratio), Copies::one()});
    return AtomicSystem(std::move(orbits), p, SystemMode::Bijective);
}

std::vector<CertReal> system_to_shift(const AtomicSystem& sys, long long count, int prec_bits) {
    if (sys.orbits().size() != 1 || sys.orbit(0).kind != OrbitKind::ZLine)
        throw UnsupportedCombination("the shift dictionary is faithful for single-line systems");
    std::vector<CertReal> out;
    const auto& wp = sys.orbit(0).weights;
    using WP = WeightProfile;
    if (auto* pf = std::get_if<WP::ProductForm>(&wp.data())) {
        for (long long i = 0; i < count; ++i) out.push_back(CertReal(pf->base.at(i)));
        return out;
    }
    Rational inv_p = Rational(1) / sys.p();
    long long start = sys.bijective() ? 0 : 0;
    for (long long i = start; i < start + count; ++i) {
        CertReal mu_i = sys.measure(Atom{0, 0, i}, prec_bits);
        CertReal mu_next = sys.measure(Atom{0, 0, i + 1}, prec_bits);
        CertReal ratio = mu_i / mu_next;
        // exact when the ratio is rational and p = 1
        if (ratio.exact() && sys.p() == 1) {
            out.push_back(ratio);
        } else {
            Rational lo = ratio.lower(), hi = ratio.upper();
            CertReal rlo = pow_rational(lo, inv_p, prec_bits);
            CertReal rhi = pow_rational(hi, inv_p, prec_bits);
            out.push_back(CertReal::from_bounds(rlo.lower(), rhi.upper()));
        }
    }
    return out;
}

ClassificationReport classify_shift(const ShiftWeights& sw, const Rational& p) {
    return classify(shift_to_system(sw, p));
}

}  // namespace lindyn
