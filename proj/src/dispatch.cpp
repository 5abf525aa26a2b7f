#include "lindyn/dispatch.hpp"

#include "lindyn/affine.hpp"
#include "lindyn/json_io.hpp"
#include "lindyn/manifest.hpp"
#include "lindyn/odometer.hpp"
#include "lindyn/shift_bridge.hpp"
#include "lindyn/svg.hpp"

#include <CLI11.hpp>

#include <sstream>

namespace lindyn {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnknowns = 3;
constexpr int kExitUndecided = 4;

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "lindyn";
    for (const auto& a : args) s += " " + a;
    return s;
}

void emit(const std::string& path, const OrderedJson& doc, std::ostream& out) {
    std::string text = doc.dump(2) + "\n";
    if (path.empty())
        out << text;
    else
        write_file_atomic(path, text);
}

AtomicSystem load_system(const std::string& path, RunManifest& manifest) {
    manifest.add_input_file(path);
    return system_from_json(Json::parse(read_file(path)));
}

std::string dn_csv(const DnSequence& seq) {
    std::ostringstream csv;
    csv << "n,d_n,d_n_exact\n";
    for (const auto& [n, v] : seq.values)
        csv << n << "," << to_decimal_string(v.mid, 12) << "," << to_string(v.mid) << "\n";
    return csv.str();
}

std::string density_csv(const DensityCurve& curve) {
    std::ostringstream csv;
    csv << "M,count,density\n";
    for (const auto& pt : curve.points)
        csv << pt.horizon << "," << pt.count << "," << pt.density << "\n";
    return csv.str();
}

odometer::CylinderSet parse_cylinder_union(const std::string& text) {
    odometer::CylinderSet acc;
    std::stringstream ss(text);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        auto c = odometer::Cylinder::parse(item);
        auto s = c.depth() == 0 ? odometer::CylinderSet::whole_space()
                                : odometer::CylinderSet::of(c);
        acc = any ? acc.unite(s) : s;
        any = true;
    }
    if (!any) throw InvalidSystem("empty cylinder literal");
    return acc;
}

// "3*[0] + -1*[1]" or "[0]" style linear combinations
odometer::CylinderStep parse_cylinder_step(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<std::pair<Rational, odometer::Cylinder>> terms;
    int depth = 0;
    while (std::getline(ss, item, '+')) {
        auto star = item.find('*');
        Rational coeff(1);
        std::string cyl = item;
        if (star != std::string::npos) {
            coeff = parse_rational(item.substr(0, star));
            cyl = item.substr(star + 1);
        }
        auto c = odometer::Cylinder::parse(cyl);
        depth = std::max(depth, c.depth());
        terms.push_back({coeff, c});
    }
    odometer::CylinderStep step;
    step.depth = depth;
    for (auto& [coeff, c] : terms) {
        auto refined = odometer::CylinderSet::of(c).refined_to(depth);
        for (long long v : refined.vals()) {
            Rational nv = step.amp.count(v) ? step.amp[v] + coeff : coeff;
            if (nv == 0)
                step.amp.erase(v);
            else
                step.amp[v] = nv;
        }
    }
    return step;
}

affine::IntervalSet parse_interval_set(const std::string& text) {
    // "[lo,hi]" or "[a,b];[c,d]"
    std::stringstream ss(text);
    std::string item;
    std::vector<affine::Interval> parts;
    while (std::getline(ss, item, ';')) {
        std::string t = item;
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        if (t.size() < 2 || t.front() != '[' || t.back() != ']')
            throw InvalidSystem("interval literal must look like [lo,hi]: " + item);
        std::string body = t.substr(1, t.size() - 2);
        auto comma = body.find(',');
        if (comma == std::string::npos) throw InvalidSystem("interval needs two endpoints");
        parts.push_back(affine::Interval{parse_rational(body.substr(0, comma)),
                                         parse_rational(body.substr(comma + 1))});
    }
    return affine::IntervalSet(std::move(parts));
}

int classification_exit(const ClassificationReport& rep) {
    if (rep.has_undecided()) return kExitUndecided;
    if (rep.has_unknowns()) return kExitUnknowns;
    return kExitOk;
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"composition-operator dynamics laboratory"};
    app.require_subcommand(1);
    Config cfg = Config::load();
    RunManifest manifest = RunManifest::from_config(cfg, join_args(args));

    std::string system_path, out_path, csv_path, svg_path;

    auto* cmd_classify = app.add_subcommand("classify", "classify a system");
    cmd_classify->add_option("--system", system_path)->required();
    cmd_classify->add_option("--out", out_path);

    auto* cmd_pair = app.add_subcommand("classify-pair", "classify a system and its inverse");
    cmd_pair->add_option("--system", system_path)->required();
    cmd_pair->add_option("--out", out_path);

    long long box_l = 0;
    auto* cmd_sc = app.add_subcommand("sc", "summability condition verdict");
    cmd_sc->add_option("--system", system_path)->required();
    cmd_sc->add_option("--box-l", box_l, "report the orbit-sum bound for a (2L+1)^2 atom box");
    cmd_sc->add_option("--out", out_path);

    auto* cmd_dist = app.add_subcommand("distortion", "bounded distortion certificate");
    cmd_dist->add_option("--system", system_path)->required();
    cmd_dist->add_option("--out", out_path);

    long long window = cfg.window;
    int dn_orbit = -1;
    long long dn_copy = 0, dn_index = 0;
    auto* cmd_dn = app.add_subcommand("dn", "d_n sequence and the necessary condition");
    cmd_dn->add_option("--system", system_path)->required();
    cmd_dn->add_option("--window", window);
    cmd_dn->add_option("--orbit", dn_orbit, "wandering atom orbit (default: heaviest line)");
    cmd_dn->add_option("--copy", dn_copy);
    cmd_dn->add_option("--index", dn_index);
    cmd_dn->add_option("--csv", csv_path);
    cmd_dn->add_option("--svg", svg_path);
    cmd_dn->add_option("--out", out_path);

    int slots = 1;
    long long horizon = cfg.horizon;
    std::string vec_out;
    auto* cmd_fhc = app.add_subcommand("construct-fhc", "build the candidate vector");
    cmd_fhc->add_option("--system", system_path)->required();
    cmd_fhc->add_option("--slots", slots);
    cmd_fhc->add_option("--horizon", horizon);
    cmd_fhc->add_option("--out", vec_out)->required();
    cmd_fhc->add_option("--report", out_path);

    std::string vector_path, target_path, eps_str = "1/10";
    bool exact_mode = false;
    auto* cmd_density = app.add_subcommand("density", "hitting-time density curve");
    cmd_density->add_option("--system", system_path)->required();
    cmd_density->add_option("--vector", vector_path)->required();
    cmd_density->add_option("--target", target_path)->required();
    cmd_density->add_option("--eps", eps_str);
    cmd_density->add_option("--horizon", horizon);
    cmd_density->add_flag("--exact", exact_mode);
    cmd_density->add_option("--csv", csv_path);
    cmd_density->add_option("--svg", svg_path);
    cmd_density->add_option("--out", out_path);

    std::string cylinder_str, step_str, p_str = "1";
    long long max_n = 1 << 20;
    auto* cmd_odo = app.add_subcommand("odometer", "odometer engine");
    auto* odo_period = cmd_odo->add_subcommand("period", "least period of an indicator");
    odo_period->add_option("--cylinder", cylinder_str)->required();
    odo_period->add_option("--out", out_path);
    auto* odo_measure = cmd_odo->add_subcommand("measure", "exact cylinder measure");
    odo_measure->add_option("--cylinder", cylinder_str)->required();
    odo_measure->add_option("--out", out_path);
    auto* odo_conserve = cmd_odo->add_subcommand("conserve", "first return with positive mass");
    odo_conserve->add_option("--cylinder", cylinder_str)->required();
    odo_conserve->add_option("--max-n", max_n);
    odo_conserve->add_option("--out", out_path);
    auto* odo_approx = cmd_odo->add_subcommand("approx", "periodic approximation of a step function");
    odo_approx->add_option("--target", step_str)->required();
    odo_approx->add_option("--p", p_str);
    odo_approx->add_option("--out", out_path);

    std::string a_str = "1", b_str = "1", b_set_str = "[0,1]";
    long long trials = 1000;
    auto* cmd_affine = app.add_subcommand("affine", "exponential-measure affine engine");
    cmd_affine->add_option("--a", a_str)->required();
    cmd_affine->add_option("--b", b_str)->required();
    auto* aff_star = cmd_affine->add_subcommand("verify-star", "random interval ratio sweep");
    aff_star->add_option("--trials", trials);
    aff_star->add_option("--out", out_path);
    auto* aff_sc = cmd_affine->add_subcommand("sc-witness", "head sums plus tail certificate");
    aff_sc->add_option("--B", b_set_str);
    aff_sc->add_option("--eps", eps_str);
    aff_sc->add_option("--csv", csv_path);
    aff_sc->add_option("--out", out_path);
    auto* aff_rec = cmd_affine->add_subcommand("recurrent", "recurrent set of the map");
    aff_rec->add_option("--out", out_path);

    std::string shift_mode = "bilateral", shift_family = "const", shift_value = "2",
                shift_pattern;
    auto* cmd_shift = app.add_subcommand("shift", "weighted shift dictionary");
    auto* shift_classify_cmd = cmd_shift->add_subcommand("classify", "classify a weighted shift");
    shift_classify_cmd->add_option("--mode", shift_mode);
    shift_classify_cmd->add_option("--family", shift_family);
    shift_classify_cmd->add_option("--value", shift_value);
    shift_classify_cmd->add_option("--pattern", shift_pattern, "comma-separated weights");
    shift_classify_cmd->add_option("--p", p_str);
    shift_classify_cmd->add_option("--out", out_path);

    std::string alpha_family = "geometric", alpha_a = "1", alpha_r = "1/2", alpha_s = "2",
                set_str = "naturals";
    auto* cmd_br = app.add_subcommand("br-lemma", "convolution boundedness desk check");
    cmd_br->add_option("--alpha", alpha_family, "geometric|constant|power");
    cmd_br->add_option("--a", alpha_a);
    cmd_br->add_option("--r", alpha_r);
    cmd_br->add_option("--s", alpha_s);
    cmd_br->add_option("--set", set_str, "naturals|evens|multiples:k");
    cmd_br->add_option("--horizon", horizon);
    cmd_br->add_option("--out", out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        OrderedJson doc;
        doc["manifest"] = OrderedJson::object();  // placeholder, filled below
        int code = kExitOk;

        if (*cmd_classify) {
            auto sys = load_system(system_path, manifest);
            auto rep = classify(sys);
            doc["report"] = classification_to_json(rep);
            code = classification_exit(rep);
        } else if (*cmd_pair) {
            auto sys = load_system(system_path, manifest);
            auto pair = classify_inverse_pair(sys);
            doc["report"] = classification_to_json(pair.forward);
            doc["inverse_report"] = classification_to_json(pair.inverse);
            doc["fh_agree"] = pair.fh_agree;
            doc["chaotic_agree"] = pair.chaotic_agree;
            code = std::max(classification_exit(pair.forward), classification_exit(pair.inverse));
        } else if (*cmd_sc) {
            auto sys = load_system(system_path, manifest);
            auto sc = check_sc(sys);
            OrderedJson r;
            r["verdict"] = sc.holds() ? "holds"
                                      : (sc.verdict == ScResult::Verdict::Fails ? "fails"
                                                                                : "undecided");
            r["reason"] = sc.reason;
            if (sc.holds()) {
                r["per_atom_bound"] = cert_to_json(sc.per_atom_bound);
                if (box_l > 0) {
                    long long atoms = (2 * box_l + 1) * (2 * box_l + 1);
                    r["box_l"] = box_l;
                    r["box_atoms"] = atoms;
                    r["box_bound"] = cert_to_json(sc_window_bound(sc, atoms));
                }
            } else if (sc.failing_atom) {
                r["witness_atom"] = sc.failing_atom->str();
            }
            doc["report"] = r;
            code = sc.verdict == ScResult::Verdict::Undecided ? kExitUndecided : kExitOk;
        } else if (*cmd_dist) {
            auto sys = load_system(system_path, manifest);
            auto cert = check_bounded_distortion(sys, canonical_generating_set(sys));
            OrderedJson r;
            if (cert.undecided) {
                r["verdict"] = "undecided";
                code = kExitUndecided;
            } else if (cert.finite) {
                r["verdict"] = "bounded";
                r["K"] = cert_to_json(cert.K);
            } else {
                r["verdict"] = "unbounded";
                if (cert.witness_n) r["witness_n"] = *cert.witness_n;
            }
            r["detail"] = cert.detail;
            doc["report"] = r;
        } else if (*cmd_dn) {
            auto sys = load_system(system_path, manifest);
            std::vector<Atom> w = dn_orbit >= 0
                                      ? std::vector<Atom>{Atom{dn_orbit, dn_copy, dn_index}}
                                      : default_dn_set(sys);
            auto seq = compute_dn(sys, w, window);
            auto nec = check_necessary_fh(seq);
            OrderedJson r;
            r["wandering_set"] = [&] {
                std::vector<std::string> ws;
                for (const auto& a : seq.wandering_set) ws.push_back(a.str());
                return ws;
            }();
            r["star_c"] = cert_to_json(seq.star_c);
            r["sum"] = summability_to_json(seq.sum);
            r["necessary_condition"] = nec.undecided ? "undecided"
                                                     : (nec.passes ? "passes" : "fails-necessary");
            r["reason"] = nec.reason;
            r["ratio_bound_ok"] = check_dn_ratio(seq);
            doc["report"] = r;
            if (!csv_path.empty()) write_file_atomic(csv_path, dn_csv(seq));
            if (!svg_path.empty()) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& [n, v] : seq.values)
                    pts.push_back({static_cast<double>(n), v.mid.convert_to<double>()});
                write_file_atomic(svg_path, svg_line_chart("d_n decay", pts, "n", "d_n"));
            }
            code = nec.undecided ? kExitUndecided : kExitOk;
        } else if (*cmd_fhc) {
            auto sys = load_system(system_path, manifest);
            DenseFamily family(sys);
            FrequencySchedule schedule(slots);
            auto built = construct_fh_vector(sys, family, schedule, horizon);
            emit(vec_out, [&] {
                OrderedJson v;
                v["manifest"] = manifest.to_json();
                v["vector"] = vector_to_json(built.vec);
                v["tail_norm_bound"] = cert_to_json(built.tail_norm_bound);
                v["support_collisions"] = built.support_collisions;
                return v;
            }(), out);
            OrderedJson r;
            r["support_size"] = built.vec.amp.size();
            r["tail_norm_bound"] = cert_to_json(built.tail_norm_bound);
            r["slots"] = slots;
            r["horizon"] = horizon;
            doc["report"] = r;
        } else if (*cmd_density) {
            auto sys = load_system(system_path, manifest);
            manifest.add_input_file(vector_path);
            manifest.add_input_file(target_path);
            Json vj = Json::parse(read_file(vector_path));
            if (vj.is_object() && vj.contains("vector")) vj = vj["vector"];
            auto phi = vector_from_json(vj);
            auto target = vector_from_json(Json::parse(read_file(target_path)));
            auto curve =
                hitting_density(sys, phi, target, parse_rational(eps_str), horizon, exact_mode);
            OrderedJson r;
            r["hits"] = curve.hits.size();
            r["lower_density_estimate"] = curve.lower_density_estimate;
            doc["report"] = r;
            if (!csv_path.empty()) write_file_atomic(csv_path, density_csv(curve));
            if (!svg_path.empty()) {
                std::vector<std::pair<double, double>> pts;
                for (const auto& pt : curve.points)
                    pts.push_back({static_cast<double>(pt.horizon), pt.density});
                write_file_atomic(svg_path, svg_line_chart("visit density", pts, "M", "density"));
            }
        } else if (*cmd_odo) {
            OrderedJson r;
            if (*odo_period) {
                auto s = parse_cylinder_union(cylinder_str);
                auto rep = odometer::periodic_point_cylinder(s);
                r["set"] = s.str();
                r["period"] = rep.period;
            } else if (*odo_measure) {
                auto s = parse_cylinder_union(cylinder_str);
                r["set"] = s.str();
                r["measure"] = to_string(s.measure());
                r["measure_decimal"] = to_decimal_string(s.measure(), 12);
            } else if (*odo_conserve) {
                auto s = parse_cylinder_union(cylinder_str);
                auto ev = odometer::conservativity_evidence(s, max_n);
                r["set"] = s.str();
                r["first_return_n"] = ev.n;
                r["intersection_measure"] = to_string(ev.intersection_measure);
            } else if (*odo_approx) {
                auto step = parse_cylinder_step(step_str);
                auto rep = odometer::simple_function_approx(step, parse_rational(p_str));
                r["period"] = rep.period;
                r["distance"] = to_string(rep.distance_pow);
            } else {
                err << "odometer needs a subcommand (period|measure|conserve|approx)\n";
                return kExitInput;
            }
            doc["report"] = r;
        } else if (*cmd_affine) {
            affine::AffineMap map(parse_rational(a_str), parse_rational(b_str));
            OrderedJson r;
            if (*aff_star) {
                auto rep = affine::star_bound_check(map, trials, cfg.seed);
                manifest.tolerances["star_margin"] = "0 (symbolic sign)";
                r["bound"] = cert_to_json(rep.bound);
                r["trials"] = rep.trials;
                r["violations"] = rep.violations;
                r["exact_equalities"] = rep.exact_equalities;
                r["min_ratio"] = cert_to_json(rep.min_ratio);
                r["min_margin_lower"] = to_string(rep.min_margin_lower);
                code = rep.violations == 0 ? kExitOk : kExitUnknowns;
            } else if (*aff_sc) {
                auto rep = affine::sc_witness(map, parse_interval_set(b_set_str),
                                              parse_rational(eps_str));
                r["delta"] = to_string(rep.delta);
                r["removed_measure"] = cert_to_json(rep.removed_measure);
                r["tail_bound"] = cert_to_json(rep.tail_bound);
                r["total_upper"] = cert_to_json(rep.total_upper);
                OrderedJson heads = OrderedJson::array();
                for (const auto& [n, v] : rep.head_sums) {
                    OrderedJson h;
                    h["N"] = n;
                    h["head_sum"] = cert_to_json(v);
                    heads.push_back(h);
                }
                r["head_sums"] = heads;
                if (!csv_path.empty()) {
                    std::ostringstream csv;
                    csv << "N,head_sum\n";
                    for (const auto& [n, v] : rep.head_sums)
                        csv << n << "," << to_decimal_string(v.mid, 15) << "\n";
                    write_file_atomic(csv_path, csv.str());
                }
            } else if (*aff_rec) {
                auto rep = affine::recurrent_set(map);
                r["recurrent_set"] = rep.kind == affine::RecurrentKind::Empty
                                         ? "empty"
                                         : (rep.kind == affine::RecurrentKind::SinglePoint
                                                ? "single-point"
                                                : "all-of-R");
                if (rep.fixed_point) r["fixed_point"] = to_string(*rep.fixed_point);
                if (rep.kind == affine::RecurrentKind::AllOfR)
                    r["note"] = "a = -1 is an involution: every point is 2-periodic, the "
                                "zero-measure-recurrence route does not apply";
            } else {
                err << "affine needs a subcommand (verify-star|sc-witness|recurrent)\n";
                return kExitInput;
            }
            doc["report"] = r;
        } else if (*cmd_shift) {
            if (!*shift_classify_cmd) {
                err << "shift needs the classify subcommand\n";
                return kExitInput;
            }
            ShiftWeights sw;
            sw.mode = shift_mode == "unilateral" ? ShiftWeights::Mode::Unilateral
                                                 : ShiftWeights::Mode::Bilateral;
            if (shift_family == "const") {
                sw.w.kind = ShiftBase::Kind::Const;
                sw.w.value = parse_rational(shift_value);
            } else if (shift_family == "periodic") {
                sw.w.kind = ShiftBase::Kind::Periodic;
                std::stringstream ss(shift_pattern);
                std::string item;
                while (std::getline(ss, item, ',')) sw.w.pattern.push_back(parse_rational(item));
            } else {
                err << "shift family must be const or periodic\n";
                return kExitInput;
            }
            auto rep = classify_shift(sw, parse_rational(p_str));
            doc["report"] = classification_to_json(rep);
            doc["system"] = system_to_json(shift_to_system(sw, parse_rational(p_str)));
            code = classification_exit(rep);
        } else if (*cmd_br) {
            WeightProfile alpha = [&]() {
                if (alpha_family == "geometric")
                    return WeightProfile::geometric(parse_rational(alpha_a),
                                                    parse_rational(alpha_r));
                if (alpha_family == "constant")
                    return WeightProfile::geometric(parse_rational(alpha_a), Rational(1));
                if (alpha_family == "power")
                    return WeightProfile::power(parse_rational(alpha_a), parse_rational(alpha_s));
                throw InvalidSystem("alpha family must be geometric, constant or power");
            }();
            BrSetSpec set;
            if (set_str == "naturals")
                set = BrSetSpec::naturals();
            else if (set_str == "evens")
                set = BrSetSpec::evens();
            else if (set_str.rfind("multiples:", 0) == 0)
                set = BrSetSpec::multiples(std::stoll(set_str.substr(10)));
            else
                throw InvalidSystem("set must be naturals, evens or multiples:k");
            auto rep = check_br_lemma(alpha, set, horizon);
            OrderedJson r;
            r["ratio_c"] = to_string(rep.ratio_c);
            r["alpha_sum"] = summability_to_json(rep.alpha_sum);
            r["max_beta"] = cert_to_json(rep.max_beta.value);
            r["max_beta_n"] = rep.max_beta.n;
            r["max_beta_lower_bound_only"] = rep.max_beta.lower_bound_only;
            OrderedJson samples = OrderedJson::array();
            for (const auto& b : rep.beta_samples) {
                OrderedJson e;
                e["n"] = b.n;
                e["beta"] = cert_to_json(b.value);
                samples.push_back(e);
            }
            r["beta_samples"] = samples;
            doc["report"] = r;
        }

        doc["manifest"] = manifest.to_json();
        emit(out_path, doc, out);
        return code;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace lindyn
