#include "egw/ops.hpp"

#include <functional>
#include <map>

#include "egw/katetov.hpp"
#include "egw/oscheck.hpp"
#include "egw/unitaryfd.hpp"

namespace egw {

namespace {

long get_long(const Json& c, const std::string& key, long dflt) {
    if (!c.contains(key))
        return dflt;
    if (!c.at(key).is_number_integer())
        throw ParseError("config." + key + ": expected an integer");
    return c.at(key).get<long>();
}

long require_long(const Json& c, const std::string& key) {
    if (!c.contains(key))
        throw ParseError("config." + key + ": required");
    return get_long(c, key, 0);
}

std::vector<int> int_list(const Json& c, const std::string& key) {
    const Json& v = c.at(key);
    if (!v.is_array())
        throw ParseError("config." + key + ": expected an array");
    return v.get<std::vector<int>>();
}

Json elem_json(const GroupElement& g) {
    Json out = Json::array();
    for (const Int& x : g)
        out.push_back(x.get_si());
    return out;
}

Json op_abgroup(const Json& c) {
    AbGroup g = abgroup_from_json(c.at("group"));
    Json rep;
    rep["star"] = has_star(g);
    rep["h_gamma_order"] = h_gamma_order(g).get_si();
    auto obs = discon_obstruction(g);
    if (obs) {
        Json jo;
        jo["p"] = obs->first.get_si();
        jo["n"] = obs->second;
        rep["obstruction"] = std::move(jo);
    } else {
        rep["obstruction"] = nullptr;
    }
    rep["exponent"] = g.exponent().get_si();
    auto size = g.materialized_size();
    rep["materialized_size"] = size ? Json(size->get_si()) : Json(nullptr);
    return rep;
}

Json op_induce(const Json& c) {
    BiInvMetricGroup k = biinv_from_json(c.at("k"));
    FinMetric z = finmetric_from_json(c.at("z"));
    SubgroupAction gamma{int_list(c.at("gamma"), "elements"), {}};
    for (const Json& p : c.at("gamma").at("perms"))
        gamma.perms.push_back(p.get<Perm>());
    gamma.validate(k.group(), z);
    ScaleResult scaled = scale_for_induction(k, gamma.elements, z);
    InduceResult res = induce(scaled.k, gamma, z);
    Json rep;
    rep["scale_factor"] = rat_json(scaled.factor);
    rep["y"] = finmetric_json(res.y);
    rep["embed"] = res.embed;
    rep["y_size"] = res.y.size();
    return rep;
}

Json op_katetov(const Json& c) {
    std::string mode = c.value("op", "saturate");
    FinMetric space = finmetric_from_json(c.at("space"));
    if (mode == "extend") {
        PartialMap pm{int_list(c, "domain"), int_list(c, "image")};
        std::optional<Rat> cap;
        if (c.contains("cap"))
            cap = rat_from_json(c.at("cap"), "config.cap");
        auto res = extend_partial_isometry(space, pm,
                                           static_cast<int>(get_long(c, "guard_size", 512)), cap);
        Json rep;
        rep["succeeded"] = res.succeeded;
        rep["map"] = res.map;
        rep["size"] = res.space.size();
        rep["failure"] = res.failure;
        return rep;
    }
    if (mode != "saturate")
        throw ParseError("config.op: unknown katetov mode '" + mode + "'");
    SaturateParams p;
    p.support_max = static_cast<int>(get_long(c, "support_max", 2));
    p.den_max = get_long(c, "den_max", 1);
    p.value_max = c.contains("value_max") ? rat_from_json(c.at("value_max"), "config.value_max")
                                          : Rat(1);
    p.guard_size = static_cast<int>(get_long(c, "guard_size", 512));
    p.seed = static_cast<unsigned long long>(get_long(c, "seed", 1));
    SaturateResult res = saturate(space, p);
    Json tower = Json::array();
    for (const TowerRecord& r : res.tower) {
        Json jr;
        jr["round"] = r.round;
        jr["label"] = r.label;
        tower.push_back(std::move(jr));
    }
    Json rep;
    rep["size"] = res.space.size();
    rep["rounds"] = res.rounds;
    rep["tower"] = std::move(tower);
    rep["gap"] = nullptr;  // saturate verifies closure before returning
    rep["space"] = finmetric_json(res.space);
    return rep;
}

Json op_lzero(const Json& c) {
    std::string mode = c.value("op", "surjective_hom");
    if (mode == "surjective_hom") {
        AbGroup g = abgroup_from_json(c.at("group"));
        int level = static_cast<int>(require_long(c, "level"));
        SurjHom s = surjective_hom(g, level, get_long(c, "cap", 3000000));
        long h = s.h_order.get_si();
        Json gens = Json::array();
        for (int t = 0; t < g.num_generators(); ++t) {
            std::vector<long> img;
            bool nonzero = false;
            for (const Character& chi : s.hom.chars) {
                const Rat& v = chi.values[t].value();
                long r = Int(v.get_num() * (h / v.get_den()) % h).get_si();
                img.push_back(r);
                nonzero = nonzero || r != 0;
            }
            if (nonzero)
                gens.push_back(img);
        }
        Json chars = Json::array();
        for (const Character& chi : s.hom.chars)
            chars.push_back(character_json(chi));
        Json rep;
        rep["level"] = level;
        rep["h_order"] = h;
        rep["image_size"] = s.image_size.get_si();
        rep["image_gens"] = std::move(gens);
        rep["chars"] = std::move(chars);
        return rep;
    }
    if (mode != "density_report")
        throw ParseError("config.op: unknown lzero mode '" + mode + "'");
    const Json& src = c.contains("gens") || !c.contains("prev") ? c : c.at("prev");
    int level = static_cast<int>(require_long(src, "level"));
    long h = require_long(src, "h_order");
    if (h < 1 || h > 64)
        throw ParseError("config.h_order: out of range");
    FiniteGroup zh = FiniteGroup::cyclic(static_cast<int>(h));
    std::vector<std::vector<Rat>> d(h, std::vector<Rat>(h));
    for (long i = 0; i < h; ++i)
        for (long j = 0; j < h; ++j)
            d[i][j] = angle_dist(Angle(rat(i, h)), Angle(rat(j, h)));
    StepGroup sg(level, BiInvMetricGroup(zh, d));
    std::vector<StepGroup::Elem> gens;
    for (const Json& g : src.at(src.contains("gens") ? "gens" : "image_gens"))
        gens.push_back(g.get<StepGroup::Elem>());
    DensityReport r = density_report(sg, gens, get_long(c, "cap", 1000000));
    Json rep;
    rep["covering_radius"] = rat_json(r.radius);
    rep["witness"] = r.witness;
    return rep;
}

Json op_oscheck(const Json& c) {
    BiInvMetricGroup g = biinv_from_json(c.at("group"));
    Rat eps = rat_from_json(c.at("epsilon"), "config.epsilon");
    std::vector<int> a = int_list(c, "A");
    Json rep;
    if (c.contains("search")) {
        WitnessSearch s = search_witness(g, a, eps,
                                         static_cast<int>(require_long(c.at("search"), "max_b")));
        rep["found"] = s.found;
        rep["b"] = s.b;
        rep["subsets_tried"] = s.subsets_tried;
        return rep;
    }
    OscInstance inst{g, a, eps, int_list(c, "B")};
    if (c.contains("sample")) {
        if (!c.at("sample").contains("seed"))
            throw ParseError("config.sample.seed: required for sampled mode");
        int trials = static_cast<int>(require_long(c.at("sample"), "trials"));
        auto seed = static_cast<unsigned long long>(require_long(c.at("sample"), "seed"));
        auto cex = sampled_falsifier(inst, trials, seed);
        rep["counterexample"] = cex ? Json(*cex) : Json(nullptr);
        rep["witness_fraction"] = rat_json(sampled_witness_fraction(inst, trials, seed));
        return rep;
    }
    auto cex = check_witness(inst, static_cast<int>(get_long(c, "cap", 20)));
    rep["witness_ok"] = !cex.has_value();
    rep["counterexample"] = cex ? Json(*cex) : Json(nullptr);
    return rep;
}

Json op_freeprod(const Json& c) {
    int d = static_cast<int>(require_long(c, "d"));
    int n = static_cast<int>(require_long(c, "n"));
    std::vector<Word> words;
    for (const Json& w : c.at("c"))
        words.push_back(word_from_json(w));
    std::vector<Int> p;
    for (const Json& pi : c.at("p")) {
        if (!pi.is_number_integer())
            throw ParseError("config.p: expected integers");
        p.push_back(Int(pi.get<long>()));
    }
    QuotientResult res = build_quotient(d, n, words, p, c.value("relaxed", false),
                                        static_cast<size_t>(get_long(c, "cap", 200000)));
    Json rep;
    rep["carrier_size"] = res.q.carrier.size();
    rep["base"] = res.q.base;
    Json orders = Json::array();
    for (const Perm& pm : res.q.abelian_perms)
        orders.push_back(perm_order(pm));
    rep["generator_orders"] = std::move(orders);
    rep["bound_n"] = res.bound.n.get_si();
    rep["bound_m"] = res.bound.m.get_si();
    rep["labels"] = res.q.labels;
    return rep;
}

Json op_unitary(const Json& c) {
    AbGroup g = abgroup_from_json(c.at("group"));
    std::vector<Character> chars;
    for (const Json& ch : c.at("chars"))
        chars.push_back(character_from_json(ch, g.num_generators()));
    DiagRep rep = make_diag_rep(std::move(g), std::move(chars));
    std::string mode = c.value("op", "is_cyclic");
    Json out;
    if (mode == "c1_search") {
        std::vector<Angle> target;
        const Json& tj = c.at("target");
        for (size_t i = 0; i < tj.size(); ++i)
            target.push_back(angle_from_json(tj[i], "config.target[" + std::to_string(i) + "]"));
        C1Result r = c1_search(rep, target, rat_from_json(c.at("epsilon"), "config.epsilon"));
        out["found"] = r.found;
        out["gamma"] = elem_json(r.gamma);
        out["best"] = rat_json(r.best);
        return out;
    }
    FdVector xi;
    for (const Json& a : c.at("xi"))
        xi.push_back(cyclo_from_json(a));
    if (mode == "is_cyclic") {
        CyclicResult r = is_cyclic(rep, xi, static_cast<int>(get_long(c, "cap", 6)));
        out["cyclic"] = r.cyclic;
        out["reason"] = r.reason;
        Json wits = Json::array();
        for (const GroupElement& w : r.witnesses)
            wits.push_back(elem_json(w));
        out["witnesses"] = std::move(wits);
        out["det"] = r.cyclic ? cyclo_json(r.det) : Json(nullptr);
        return out;
    }
    if (mode != "spectral_measure")
        throw ParseError("config.op: unknown unitary mode '" + mode + "'");
    SpectralMeasure m = spectral_measure(rep, xi);
    Json atoms = Json::array();
    for (size_t k = 0; k < m.atoms.size(); ++k) {
        Json ja;
        ja["char"] = character_json(m.atoms[k]);
        ja["mass"] = rat_json(m.masses[k]);
        atoms.push_back(std::move(ja));
    }
    out["atoms"] = std::move(atoms);
    return out;
}

Json op_validate(const Json& c) {
    Json doc;
    if (c.contains("document")) {
        doc = c.at("document");
    } else if (c.contains("prev") && c.contains("field")) {
        doc = c.at("prev").at(c.at("field").get<std::string>());
        if (c.contains("kind")) {
            Json tagged;
            tagged["kind"] = c.at("kind");
            for (const auto& [k, v] : doc.items())
                tagged[k] = v;
            doc = std::move(tagged);
        }
    } else {
        throw ParseError("config.document: required");
    }
    std::string err = validate_document(doc);
    if (!err.empty())
        throw ParseError(err);
    Json rep;
    rep["valid"] = true;
    return rep;
}

using Handler = std::function<Json(const Json&)>;

const std::map<std::string, Handler>& registry() {
    static const std::map<std::string, Handler> r = {
        {"abgroup", op_abgroup},   {"induce", op_induce},     {"katetov", op_katetov},
        {"lzero", op_lzero},       {"oscheck", op_oscheck},   {"freeprod", op_freeprod},
        {"unitary", op_unitary},   {"validate", op_validate},
    };
    return r;
}

OpResult run_pipeline(const Json& c) {
    OpResult res;
    if (c.contains("stages") && !c.at("stages").is_array()) {
        res.exit_code = 2;
        res.report["error"] = "config.stages: expected an array";
        return res;
    }
    Json stages = c.contains("stages") ? c.at("stages") : Json::array();
    res.report["stages"] = Json::array();
    Json prev;
    for (size_t i = 0; i < stages.size(); ++i) {
        std::string op = stages[i].value("op", "");
        Json cfg = stages[i].value("config", Json::object());
        if (!prev.is_null())
            cfg["prev"] = prev;
        OpResult r = run_op(op, cfg);
        if (r.exit_code != 0) {
            res.exit_code = r.exit_code;
            res.report["failed_stage"] = i;
            res.report["stage_report"] = r.report;
            res.report["error"] = "stage " + std::to_string(i) + " failed";
            return res;
        }
        prev = r.report;
        res.report["stages"].push_back(r.report);
    }
    res.report["status"] = "ok";
    return res;
}

}  // namespace

std::vector<std::string> op_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry())
        out.push_back(k);
    out.push_back("pipeline");
    return out;
}

OpResult run_op(const std::string& name, const Json& config) {
    OpResult res;
    if (name == "pipeline") {
        res = run_pipeline(config);
        res.report["config"] = config;
        return res;
    }
    try {
        auto it = registry().find(name);
        if (it == registry().end())
            throw ParseError("unknown subcommand '" + name + "'");
        res.report = it->second(config);
        res.exit_code = 0;
    } catch (const ParseError& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    } catch (const std::invalid_argument& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    } catch (const std::length_error& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    } catch (const std::out_of_range& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    } catch (const GuardError& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    } catch (const std::logic_error& e) {
        res.exit_code = 3;
        res.report["error"] = e.what();
        res.report["postcondition_failure"] = true;
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.report["error"] = e.what();
    }
    res.report["config"] = config;
    return res;
}

}  // namespace egw
