#include "lindyn/json_io.hpp"

namespace lindyn {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(Int(j.get<unsigned long long>()));
    if (j.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        return parse_rational(buf);
    }
    throw InvalidSystem("expected a rational (string \"num/den\" or number)");
}

std::string rational_to_json(const Rational& q) { return to_string(q); }

WeightProfile profile_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw InvalidSystem("weight profile needs a \"family\" field");
    std::string fam = j.at("family").get<std::string>();
    std::optional<TailCertificate> tail;
    if (j.contains("tail")) {
        TailCertificate tc;
        tc.n0 = j["tail"].at("N0").get<long long>();
        tc.c = rational_from_json(j["tail"].at("C"));
        tc.r = rational_from_json(j["tail"].at("r"));
        tail = tc;
    }
    auto table_of = [&](const Json& values) {
        std::map<long long, Rational> w;
        for (auto it = values.begin(); it != values.end(); ++it)
            w[std::stoll(it.key())] = rational_from_json(it.value());
        return w;
    };
    if (fam == "explicit")
        return WeightProfile(WeightProfile::Explicit{table_of(j.at("values"))}, tail);
    if (fam == "window")
        return WeightProfile(WeightProfile::Window{table_of(j.at("values"))}, tail);
    if (fam == "geometric")
        return WeightProfile(
            WeightProfile::Geometric{rational_from_json(j.at("a")), rational_from_json(j.at("r"))},
            tail);
    if (fam == "two_sided") {
        Rational ap = rational_from_json(j.at("a_pos")), rp = rational_from_json(j.at("r_pos"));
        Rational am = rational_from_json(j.at("a_neg")), rm = rational_from_json(j.at("r_neg"));
        Rational c0 = j.contains("w0") ? rational_from_json(j.at("w0")) : ap;
        return WeightProfile(WeightProfile::TwoSided{c0, ap, rp, am, rm}, tail);
    }
    if (fam == "power")
        return WeightProfile(
            WeightProfile::Power{rational_from_json(j.at("a")), rational_from_json(j.at("s"))},
            tail);
    if (fam == "product") {
        ShiftBase base;
        const Json& bj = j.at("base");
        std::string bf = bj.at("family").get<std::string>();
        if (bf == "const") {
            base.kind = ShiftBase::Kind::Const;
            base.value = rational_from_json(bj.at("value"));
        } else if (bf == "periodic") {
            base.kind = ShiftBase::Kind::Periodic;
            for (const auto& v : bj.at("pattern")) base.pattern.push_back(rational_from_json(v));
        } else {
            throw InvalidSystem("unknown product base family: " + bf);
        }
        return WeightProfile(WeightProfile::ProductForm{base, rational_from_json(j.at("p"))}, tail);
    }
    throw InvalidSystem("unknown weight family: " + fam);
}

OrderedJson profile_to_json(const WeightProfile& wp) {
    OrderedJson j;
    using WP = WeightProfile;
    if (auto* e = std::get_if<WP::Explicit>(&wp.data())) {
        j["family"] = "explicit";
        OrderedJson vals;
        for (const auto& [n, v] : e->w) vals[std::to_string(n)] = rational_to_json(v);
        j["values"] = vals;
    } else if (auto* w = std::get_if<WP::Window>(&wp.data())) {
        j["family"] = "window";
        OrderedJson vals;
        for (const auto& [n, v] : w->w) vals[std::to_string(n)] = rational_to_json(v);
        j["values"] = vals;
    } else if (auto* g = std::get_if<WP::Geometric>(&wp.data())) {
        j["family"] = "geometric";
        j["a"] = rational_to_json(g->a);
        j["r"] = rational_to_json(g->r);
    } else if (auto* t = std::get_if<WP::TwoSided>(&wp.data())) {
        j["family"] = "two_sided";
        j["a_pos"] = rational_to_json(t->cp);
        j["r_pos"] = rational_to_json(t->rp);
        j["a_neg"] = rational_to_json(t->cm);
        j["r_neg"] = rational_to_json(t->rm);
        if (t->c0 != t->cp) j["w0"] = rational_to_json(t->c0);
    } else if (auto* p = std::get_if<WP::Power>(&wp.data())) {
        j["family"] = "power";
        j["a"] = rational_to_json(p->a);
        j["s"] = rational_to_json(p->s);
    } else if (auto* pf = std::get_if<WP::ProductForm>(&wp.data())) {
        j["family"] = "product";
        OrderedJson base;
        if (pf->base.kind == ShiftBase::Kind::Const) {
            base["family"] = "const";
            base["value"] = rational_to_json(pf->base.value);
        } else {
            base["family"] = "periodic";
            std::vector<std::string> pat;
            for (const auto& v : pf->base.pattern) pat.push_back(rational_to_json(v));
            base["pattern"] = pat;
        }
        j["base"] = base;
        j["p"] = rational_to_json(pf->p);
    }
    if (wp.tail()) {
        OrderedJson t;
        t["N0"] = wp.tail()->n0;
        t["C"] = rational_to_json(wp.tail()->c);
        t["r"] = rational_to_json(wp.tail()->r);
        j["tail"] = t;
    }
    return j;
}

AtomicSystem system_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidSystem("system description must be an object");
    Rational p = j.contains("p") ? rational_from_json(j.at("p")) : Rational(1);
    SystemMode mode = SystemMode::Bijective;
    if (j.contains("mode")) {
        std::string m = j.at("mode").get<std::string>();
        if (m == "bijective")
            mode = SystemMode::Bijective;
        else if (m == "forward")
            mode = SystemMode::Forward;
        else
            throw InvalidSystem("mode must be \"bijective\" or \"forward\"");
    }
    std::vector<OrbitSpec> orbits;
    if (!j.contains("orbits") || !j.at("orbits").is_array() || j.at("orbits").empty())
        throw InvalidSystem("system needs a nonempty \"orbits\" array");
    for (const auto& oj : j.at("orbits")) {
        OrbitSpec spec{OrbitKind::ZLine, 0, profile_from_json(oj.at("weights")), Copies::one()};
        std::string kind = oj.at("kind").get<std::string>();
        if (kind == "cycle") {
            spec.kind = OrbitKind::Cycle;
            spec.cycle_length = oj.at("length").get<long long>();
        } else if (kind != "z_line") {
            throw InvalidSystem("orbit kind must be \"z_line\" or \"cycle\"");
        }
        if (oj.contains("copies")) {
            const auto& c = oj.at("copies");
            if (c.is_string() && c.get<std::string>() == "infinite")
                spec.copies = Copies::unbounded();
            else
                spec.copies = Copies::finite(c.get<long long>());
        }
        orbits.push_back(std::move(spec));
    }
    return AtomicSystem(std::move(orbits), std::move(p), mode);
}

OrderedJson system_to_json(const AtomicSystem& sys) {
    OrderedJson j;
    j["p"] = rational_to_json(sys.p());
    j["mode"] = sys.bijective() ? "bijective" : "forward";
    OrderedJson arr = OrderedJson::array();
    for (const auto& o : sys.orbits()) {
        OrderedJson oj;
        oj["kind"] = o.kind == OrbitKind::Cycle ? "cycle" : "z_line";
        if (o.kind == OrbitKind::Cycle) oj["length"] = o.cycle_length;
        if (o.copies.infinite)
            oj["copies"] = "infinite";
        else if (o.copies.count != 1)
            oj["copies"] = o.copies.count;
        oj["weights"] = profile_to_json(o.weights);
        arr.push_back(oj);
    }
    j["orbits"] = arr;
    return j;
}

LpVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidSystem("vector literal must be an array");
    LpVector v;
    for (const auto& e : j) {
        Atom a;
        a.orbit = e.at("orbit").get<int>();
        a.copy = e.contains("copy") ? e.at("copy").get<long long>() : 0;
        a.index = e.at("index").get<long long>();
        v.set(a, rational_from_json(e.at("amp")));
    }
    return v;
}

OrderedJson vector_to_json(const LpVector& v) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& [a, amp] : v.amp) {
        OrderedJson e;
        e["orbit"] = a.orbit;
        if (a.copy != 0) e["copy"] = a.copy;
        e["index"] = a.index;
        e["amp"] = rational_to_json(amp);
        arr.push_back(e);
    }
    return arr;
}

OrderedJson cert_to_json(const CertReal& c) {
    OrderedJson j;
    j["mid"] = rational_to_json(c.mid);
    j["rad"] = rational_to_json(c.rad);
    j["decimal"] = to_decimal_string(c.mid, 12);
    return j;
}

OrderedJson summability_to_json(const SummabilityResult& s) {
    OrderedJson j;
    j["verdict"] = s.verdict == Summability::Summable
                       ? "summable"
                       : (s.verdict == Summability::Divergent ? "divergent" : "undecided");
    if (s.summable()) j["total"] = cert_to_json(s.total);
    j["reason"] = s.reason;
    return j;
}

const char* verdict3_name(Verdict3 v) {
    switch (v) {
        case Verdict3::Yes: return "yes";
        case Verdict3::No: return "no";
        case Verdict3::Unknown: return "unknown";
    }
    return "?";
}

namespace {

OrderedJson entry_to_json(const VerdictEntry& e) {
    OrderedJson j;
    j["verdict"] = verdict3_name(e.verdict);
    j["justification"] = rule_name(e.rule);
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

}  // namespace

OrderedJson classification_to_json(const ClassificationReport& rep) {
    OrderedJson j;
    j["dissipative"] = entry_to_json(rep.dissipative);
    OrderedJson sc;
    sc["verdict"] = rep.sc == ScResult::Verdict::Holds
                        ? "holds"
                        : (rep.sc == ScResult::Verdict::Fails ? "fails" : "undecided");
    sc["justification"] = rule_name(rep.sc_rule);
    sc["note"] = rep.sc_note;
    j["summability_condition"] = sc;
    j["mu_finite"] = entry_to_json(rep.mu_finite);
    OrderedJson dist;
    switch (rep.distortion) {
        case ClassificationReport::Distortion::Finite:
            dist["verdict"] = "bounded";
            dist["K"] = cert_to_json(rep.distortion_k);
            break;
        case ClassificationReport::Distortion::Unbounded:
            dist["verdict"] = "unbounded";
            break;
        case ClassificationReport::Distortion::NotApplicable:
            dist["verdict"] = "n/a";
            break;
        case ClassificationReport::Distortion::Undecided:
            dist["verdict"] = "undecided";
            break;
    }
    dist["note"] = rep.distortion_note;
    j["bounded_distortion"] = dist;
    j["ergodic_dissipative"] = entry_to_json(rep.ergodic_dissipative);
    j["chaotic"] = entry_to_json(rep.chaotic);
    j["frequently_hypercyclic"] = entry_to_json(rep.frequently_hypercyclic);
    j["topologically_mixing"] = entry_to_json(rep.topologically_mixing);
    if (rep.dn_sum) j["dn_sum"] = summability_to_json(*rep.dn_sum);
    return j;
}

}  // namespace lindyn
