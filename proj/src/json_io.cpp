#include "egw/json_io.hpp"

#include <sstream>

namespace egw {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        fail(where, "missing field '" + key + "'");
    return j.at(key);
}

long int_field(const Json& j, const std::string& key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer())
        fail(where + "." + key, "expected an integer");
    return v.get<long>();
}

}  // namespace

Json rat_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j, const std::string& where) {
    if (!j.is_string())
        fail(where, "expected a fraction string");
    if (auto err = check_reduced_fraction(j.get<std::string>()))
        fail(where, *err);
    return parse_rat(j.get<std::string>());
}

Json angle_json(const Angle& a) { return rat_str(a.value()); }

Angle angle_from_json(const Json& j, const std::string& where) {
    Rat v = rat_from_json(j, where);
    if (v < 0 || v >= 1)
        fail(where, "angle must lie in [0, 1)");
    return Angle(v);
}

Json abgroup_json(const AbGroup& g) {
    Json blocks = Json::array();
    for (const PrimaryBlock& b : g.primary()) {
        Json jb;
        jb["p"] = b.p.get_si();
        jb["n"] = b.n;
        if (b.mult)
            jb["mult"] = b.mult->get_si();
        else
            jb["mult"] = "inf";
        jb["trunc"] = b.trunc;
        blocks.push_back(std::move(jb));
    }
    Json out;
    out["free_rank"] = g.free_rank();
    out["primary"] = std::move(blocks);
    return out;
}

AbGroup abgroup_from_json(const Json& j) {
    long fr = int_field(j, "free_rank", "group");
    const Json& prim = field(j, "primary", "group");
    if (!prim.is_array())
        fail("group.primary", "expected an array");
    std::vector<PrimaryBlock> blocks;
    for (size_t i = 0; i < prim.size(); ++i) {
        std::string where = "group.primary[" + std::to_string(i) + "]";
        PrimaryBlock b;
        b.p = Int(int_field(prim[i], "p", where));
        b.n = static_cast<int>(int_field(prim[i], "n", where));
        const Json& mult = field(prim[i], "mult", where);
        if (mult.is_string() && mult.get<std::string>() == "inf")
            b.mult = std::nullopt;
        else if (mult.is_number_integer())
            b.mult = Int(mult.get<long>());
        else
            fail(where + ".mult", "expected an integer or \"inf\"");
        b.trunc = static_cast<int>(int_field(prim[i], "trunc", where));
        blocks.push_back(std::move(b));
    }
    return AbGroup(static_cast<int>(fr), std::move(blocks));
}

Json character_json(const Character& chi) {
    Json out = Json::object();
    for (size_t t = 0; t < chi.values.size(); ++t)
        out["g" + std::to_string(t + 1)] = angle_json(chi.values[t]);
    return out;
}

Character character_from_json(const Json& j, int num_generators) {
    if (!j.is_object())
        fail("character", "expected an object of generator values");
    Character chi{std::vector<Angle>(num_generators)};
    for (const auto& [key, val] : j.items()) {
        if (key.size() < 2 || key[0] != 'g')
            fail("character", "bad generator id '" + key + "'");
        long t = std::stol(key.substr(1));
        if (t < 1 || t > num_generators)
            fail("character", "generator id out of range: " + key);
        chi.values[t - 1] = angle_from_json(val, "character." + key);
    }
    return chi;
}

Json finmetric_json(const FinMetric& x) {
    Json dist = Json::array();
    for (int i = 0; i < x.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < x.size(); ++j)
            row.push_back(rat_json(x.d(i, j)));
        dist.push_back(std::move(row));
    }
    Json out;
    out["points"] = x.labels();
    out["dist"] = std::move(dist);
    return out;
}

FinMetric finmetric_from_json(const Json& j) {
    const Json& pts = field(j, "points", "metric");
    const Json& dist = field(j, "dist", "metric");
    if (!pts.is_array() || !dist.is_array())
        fail("metric", "points and dist must be arrays");
    std::vector<std::string> labels;
    for (const Json& p : pts)
        labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    std::vector<std::vector<Rat>> d;
    for (size_t r = 0; r < dist.size(); ++r) {
        if (!dist[r].is_array() || dist[r].size() != labels.size())
            fail("metric.dist[" + std::to_string(r) + "]", "row length mismatch");
        std::vector<Rat> row;
        for (size_t c = 0; c < dist[r].size(); ++c)
            row.push_back(rat_from_json(
                dist[r][c], "metric.dist[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        d.push_back(std::move(row));
    }
    if (auto v = FinMetric::check(d))
        fail("metric." + v->kind, v->message);
    return FinMetric(std::move(labels), std::move(d));
}

Json biinv_json(const BiInvMetricGroup& k) {
    Json dist = Json::array();
    for (int i = 0; i < k.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < k.size(); ++j)
            row.push_back(rat_json(k.d(i, j)));
        dist.push_back(std::move(row));
    }
    Json out;
    out["table"] = k.group().table();
    out["dist"] = std::move(dist);
    return out;
}

BiInvMetricGroup biinv_from_json(const Json& j) {
    const Json& table = field(j, "table", "metric_group");
    const Json& dist = field(j, "dist", "metric_group");
    if (!table.is_array())
        fail("metric_group.table", "expected an array");
    std::vector<std::vector<int>> t;
    for (const Json& row : table)
        t.push_back(row.get<std::vector<int>>());
    std::vector<std::vector<Rat>> d;
    for (size_t r = 0; r < dist.size(); ++r) {
        std::vector<Rat> row;
        for (size_t c = 0; c < dist[r].size(); ++c)
            row.push_back(rat_from_json(dist[r][c], "metric_group.dist[" + std::to_string(r) +
                                                        "][" + std::to_string(c) + "]"));
        d.push_back(std::move(row));
    }
    return BiInvMetricGroup(FiniteGroup(std::move(t)), std::move(d));
}

Json word_json(const Word& w) {
    Json out = Json::array();
    for (const Syllable& s : w.syl) {
        Json js;
        if (s.abelian()) {
            Json exps = Json::array();
            for (const Int& e : s.exps)
                exps.push_back(e.get_si());
            js["abelian"] = std::move(exps);
        } else {
            std::string str;
            for (int l : s.letters) {
                if (!str.empty())
                    str += ' ';
                str += "a" + std::to_string(std::abs(l)) + (l < 0 ? "^-1" : "");
            }
            js["free"] = str;
        }
        out.push_back(std::move(js));
    }
    return out;
}

Word word_from_json(const Json& j) {
    if (!j.is_array())
        fail("word", "expected a syllable array");
    Word w;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string where = "word[" + std::to_string(i) + "]";
        if (j[i].contains("abelian")) {
            std::vector<Int> exps;
            for (const Json& e : j[i].at("abelian")) {
                if (!e.is_number_integer())
                    fail(where, "abelian exponent must be an integer");
                exps.push_back(Int(e.get<long>()));
            }
            w.syl.push_back(syl_ab(exps));
        } else if (j[i].contains("free")) {
            std::vector<int> letters;
            std::istringstream in(j[i].at("free").get<std::string>());
            std::string tok;
            while (in >> tok) {
                bool inv = tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1";
                std::string body = inv ? tok.substr(0, tok.size() - 3) : tok;
                if (body.size() < 2 || body[0] != 'a')
                    fail(where, "bad free letter '" + tok + "'");
                int l = static_cast<int>(std::stol(body.substr(1)));
                letters.push_back(inv ? -l : l);
            }
            if (letters.empty())
                fail(where, "empty free syllable");
            w.syl.push_back(syl_free(letters));
        } else {
            fail(where, "syllable needs 'abelian' or 'free'");
        }
    }
    return w;
}

Json stepmap_json(const StepMap& f) {
    Json vals = Json::array();
    for (const Angle& a : f.values)
        vals.push_back(angle_json(a));
    Json out;
    out["level"] = f.level;
    out["values"] = std::move(vals);
    return out;
}

StepMap stepmap_from_json(const Json& j) {
    StepMap f;
    f.level = static_cast<int>(int_field(j, "level", "stepmap"));
    const Json& vals = field(j, "values", "stepmap");
    if (!vals.is_array())
        fail("stepmap.values", "expected an array");
    for (size_t i = 0; i < vals.size(); ++i)
        f.values.push_back(angle_from_json(vals[i], "stepmap.values[" + std::to_string(i) + "]"));
    validate_step(f);
    return f;
}

Json cyclo_json(const CycloNumber& c) {
    Json coeffs = Json::array();
    for (const Rat& q : c.coeffs())
        coeffs.push_back(rat_json(q));
    Json out;
    out["m"] = c.conductor();
    out["coeffs"] = std::move(coeffs);
    return out;
}

CycloNumber cyclo_from_json(const Json& j) {
    long m = int_field(j, "m", "cyclo");
    if (m < 1)
        fail("cyclo.m", "conductor must be positive");
    const Json& coeffs = field(j, "coeffs", "cyclo");
    std::vector<Rat> cs;
    for (size_t i = 0; i < coeffs.size(); ++i)
        cs.push_back(rat_from_json(coeffs[i], "cyclo.coeffs[" + std::to_string(i) + "]"));
    return CycloNumber::from_coeffs(static_cast<unsigned long>(m), std::move(cs));
}

std::string validate_document(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("kind"))
            return "document needs a 'kind' field";
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "group")
            abgroup_from_json(j);
        else if (kind == "metric")
            finmetric_from_json(j);
        else if (kind == "metric_group")
            biinv_from_json(j);
        else if (kind == "word")
            word_from_json(field(j, "syllables", "word"));
        else if (kind == "stepmap")
            stepmap_from_json(j);
        else if (kind == "cyclo")
            cyclo_from_json(j);
        else
            return "unknown kind '" + kind + "'";
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace egw
