#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "egw/ops.hpp"

using namespace egw;

namespace {

Json z2_metric_group() {
    return Json::parse(R"({"table": [[0,1],[1,0]], "dist": [["0","1"],["1","0"]]})");
}

}  // namespace

TEST_CASE("rational and angle json") {
    CHECK(rat_json(rat(1, 2)) == "1/2");
    CHECK(rat_from_json(Json("3/4"), "x") == rat(3, 4));
    CHECK_THROWS_AS(rat_from_json(Json("2/4"), "x"), ParseError);
    CHECK_THROWS_AS(rat_from_json(Json(7), "x"), ParseError);
    CHECK(angle_from_json(Json("1/4"), "x") == Angle(rat(1, 4)));
    CHECK_THROWS_AS(angle_from_json(Json("5/4"), "x"), ParseError);
}

TEST_CASE("group descriptor round trip") {
    Json j = Json::parse(
        R"({"free_rank": 0, "primary": [{"p": 2, "n": 1, "mult": "inf", "trunc": 4},
                                        {"p": 3, "n": 2, "mult": 5, "trunc": 2}]})");
    AbGroup g = abgroup_from_json(j);
    CHECK(g.num_generators() == 9);  // trunc only limits the infinite block
    CHECK(abgroup_json(g) == j);
    CHECK_THROWS_AS(abgroup_from_json(Json::object()), ParseError);

    Character chi{std::vector<Angle>(9)};
    chi.values[0] = Angle(rat(1, 2));
    Json cj = character_json(chi);
    CHECK(cj.at("g1") == "1/2");
    CHECK(character_from_json(cj, 9).values == chi.values);
    // sparse form: omitted generators are zero
    CHECK(character_from_json(Json::parse(R"({"g1": "1/2"})"), 9).values == chi.values);
    CHECK_THROWS_AS(character_from_json(Json::parse(R"({"g12": "1/2"})"), 9), ParseError);
}

TEST_CASE("metric and metric group json") {
    Json j = Json::parse(R"({"points": ["a", "b"], "dist": [["0","1/2"],["1/2","0"]]})");
    FinMetric x = finmetric_from_json(j);
    CHECK(x.d(0, 1) == rat(1, 2));
    CHECK(finmetric_json(x) == j);
    // axiom violations carry the violation kind in the message
    Json bad = Json::parse(R"({"points": ["a", "b"], "dist": [["0","-1"],["-1","0"]]})");
    CHECK_THROWS_WITH_AS(finmetric_from_json(bad), doctest::Contains("positivity"), ParseError);

    BiInvMetricGroup k = biinv_from_json(z2_metric_group());
    CHECK(k.d(0, 1) == 1);
    CHECK(biinv_json(k) == z2_metric_group());
}

TEST_CASE("word stepmap cyclo json") {
    Json wj = Json::parse(R"([{"abelian": [2, 0]}, {"free": "a1 a2^-1"}])");
    Word w = word_from_json(wj);
    CHECK(w.syl[1].letters == std::vector<int>{1, -2});
    CHECK(word_json(w) == wj);
    CHECK_THROWS_AS(word_from_json(Json::parse(R"([{"x": 1}])")), ParseError);

    Json sj = Json::parse(R"({"level": 1, "values": ["0", "1/2"]})");
    StepMap f = stepmap_from_json(sj);
    CHECK(stepmap_json(f) == sj);
    CHECK_THROWS(stepmap_from_json(Json::parse(R"({"level": 2, "values": ["0"]})")));

    Json cj = Json::parse(R"({"m": 4, "coeffs": ["1", "1"]})");
    CHECK(cyclo_json(cyclo_from_json(cj)) == cj);
}

TEST_CASE("validate_document") {
    Json good = Json::parse(R"({"kind": "group", "free_rank": 0, "primary": []})");
    CHECK(validate_document(good) == "");
    CHECK(validate_document(Json::parse(R"({"kind": "nope"})")) != "");
    CHECK(validate_document(Json::parse(R"([1])")) != "");
    Json unreduced = Json::parse(
        R"({"kind": "metric", "points": ["a"], "dist": [["0/2"]]})");
    CHECK(validate_document(unreduced) != "");
}

TEST_CASE("run_op exit codes") {
    Json cfg;
    cfg["group"] = Json::parse(R"({"free_rank": 0, "primary": [{"p":2,"n":1,"mult":"inf","trunc":2}]})");
    OpResult ok = run_op("abgroup", cfg);
    CHECK(ok.exit_code == 0);
    CHECK(ok.report.at("star") == true);
    CHECK(ok.report.at("h_gamma_order") == 2);
    CHECK(ok.report.at("config") == cfg);

    OpResult bad = run_op("abgroup", Json::object());
    CHECK(bad.exit_code == 2);
    CHECK(bad.report.contains("error"));

    OpResult unknown = run_op("frobnicate", Json::object());
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("oscheck op modes") {
    Json cfg;
    cfg["group"] = z2_metric_group();
    cfg["epsilon"] = "1/2";
    cfg["A"] = Json::array({0, 1});
    cfg["B"] = Json::array({0, 1});
    OpResult r = run_op("oscheck", cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("witness_ok") == false);
    CHECK(r.report.at("counterexample").is_array());

    cfg.erase("B");
    cfg["search"] = Json::parse(R"({"max_b": 2})");
    OpResult s = run_op("oscheck", cfg);
    CHECK(s.exit_code == 0);
    CHECK(s.report.at("found") == false);

    cfg.erase("search");
    cfg["B"] = Json::array({0, 1});
    cfg["sample"] = Json::parse(R"({"trials": 50, "seed": 9})");
    OpResult m = run_op("oscheck", cfg);
    CHECK(m.exit_code == 0);
    CHECK(m.report.at("counterexample").is_array());
    // sampled mode without a seed is an input error
    cfg["sample"] = Json::parse(R"({"trials": 50})");
    CHECK(run_op("oscheck", cfg).exit_code == 2);
}

TEST_CASE("katetov freeprod unitary ops") {
    Json kc;
    kc["space"] = Json::parse(R"({"points": ["a","b"], "dist": [["0","2"],["2","0"]]})");
    kc["support_max"] = 2;
    kc["den_max"] = 1;
    kc["value_max"] = "2";
    kc["guard_size"] = 200;
    kc["seed"] = 5;
    OpResult k = run_op("katetov", kc);
    CHECK(k.exit_code == 0);
    CHECK(k.report.at("size").get<int>() < 60);
    CHECK(k.report.at("gap").is_null());

    Json fc;
    fc["d"] = 1;
    fc["n"] = 0;
    fc["c"] = Json::array({Json::parse(R"([{"abelian": [1]}])")});
    fc["p"] = Json::array({5});
    OpResult f = run_op("freeprod", fc);
    CHECK(f.exit_code == 0);
    CHECK(f.report.at("carrier_size") == 5);
    CHECK(f.report.at("generator_orders") == Json::array({5}));

    Json uc;
    uc["group"] = Json::parse(R"({"free_rank": 0, "primary": [{"p":2,"n":1,"mult":1,"trunc":1}]})");
    uc["chars"] = Json::parse(R"([{}, {"g1": "1/2"}])");
    uc["xi"] = Json::parse(R"([{"m":2,"coeffs":["1"]}, {"m":2,"coeffs":["1"]}])");
    OpResult u = run_op("unitary", uc);
    CHECK(u.exit_code == 0);
    CHECK(u.report.at("cyclic") == true);
    uc["op"] = "spectral_measure";
    OpResult sm = run_op("unitary", uc);
    CHECK(sm.exit_code == 0);
    CHECK(sm.report.at("atoms").size() == 2);
}

TEST_CASE("pipeline examples") {
    // homomorphism image feeds the density stage: full image, radius 0
    Json p1;
    p1["stages"] = Json::array();
    Json s1;
    s1["op"] = "lzero";
    s1["config"]["group"] =
        Json::parse(R"({"free_rank": 0, "primary": [{"p":2,"n":1,"mult":"inf","trunc":4}]})");
    s1["config"]["level"] = 1;
    p1["stages"].push_back(s1);
    Json s2;
    s2["op"] = "lzero";
    s2["config"]["op"] = "density_report";
    p1["stages"].push_back(s2);
    OpResult r1 = run_op("pipeline", p1);
    CHECK(r1.exit_code == 0);
    CHECK(r1.report.at("stages")[1].at("covering_radius") == "0");

    // induced metric feeds the schema validator
    Json p2;
    Json i1;
    i1["op"] = "induce";
    i1["config"]["k"] = Json::parse(R"({"table": [[0,1],[1,0]], "dist": [["0","3"],["3","0"]]})");
    i1["config"]["z"] = Json::parse(R"({"points": ["x","y"], "dist": [["0","1"],["1","0"]]})");
    i1["config"]["gamma"] = Json::parse(R"({"elements": [0,1], "perms": [[0,1],[1,0]]})");
    Json i2;
    i2["op"] = "validate";
    i2["config"]["field"] = "y";
    i2["config"]["kind"] = "metric";
    p2["stages"] = Json::array({i1, i2});
    OpResult r2 = run_op("pipeline", p2);
    CHECK(r2.exit_code == 0);
    CHECK(r2.report.at("stages")[1].at("valid") == true);

    // empty manifest succeeds; a broken stage reports its index
    OpResult empty = run_op("pipeline", Json::object());
    CHECK(empty.exit_code == 0);
    CHECK(empty.report.at("status") == "ok");
    Json pbad;
    pbad["stages"] = Json::array({Json::parse(R"({"op": "abgroup", "config": {}})")});
    OpResult rbad = run_op("pipeline", pbad);
    CHECK(rbad.exit_code == 2);
    CHECK(rbad.report.at("failed_stage") == 0);
}

TEST_CASE("reports are deterministic") {
    Json cfg;
    cfg["group"] = z2_metric_group();
    cfg["epsilon"] = "1/2";
    cfg["A"] = Json::array({0, 1});
    cfg["B"] = Json::array({0, 1});
    cfg["sample"] = Json::parse(R"({"trials": 200, "seed": 13})");
    OpResult a = run_op("oscheck", cfg);
    OpResult b = run_op("oscheck", cfg);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.exit_code == b.exit_code);
}
