#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "egw/oscheck.hpp"

using namespace egw;

namespace {

BiInvMetricGroup z2_unit() {
    return BiInvMetricGroup(FiniteGroup::cyclic(2), {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
}

std::vector<int> all_elems(const BiInvMetricGroup& g) {
    std::vector<int> out(g.size());
    for (int i = 0; i < g.size(); ++i)
        out[i] = i;
    return out;
}

}  // namespace

TEST_CASE("check_witness trivial cases") {
    BiInvMetricGroup g = z2_unit();
    // eps beyond the diameter: any singleton witnesses
    CHECK_FALSE(check_witness({g, all_elems(g), Rat(2), {0}}).has_value());
    CHECK_FALSE(check_witness({g, all_elems(g), Rat(2), {1}}).has_value());
    // empty A is vacuous
    CHECK_FALSE(check_witness({g, {}, rat(1, 10), {0}}).has_value());
    CHECK_THROWS(check_witness({g, {0}, Rat(0), {0}}));
    CHECK_THROWS(check_witness({g, {5}, Rat(1), {0}}));
    CHECK_THROWS(check_witness({g, {0}, Rat(1), {0, 0}}));
    CHECK_THROWS(check_witness({g, {0}, Rat(1), all_elems(g)}, 1));
}

TEST_CASE("check_witness two-point counterexample") {
    BiInvMetricGroup g = z2_unit();
    // strict 1/2-balls are singletons, so no class can cover both translates
    for (const std::vector<int>& b : {std::vector<int>{0}, {1}, {0, 1}}) {
        auto c = check_witness({g, all_elems(g), rat(1, 2), b});
        REQUIRE(c.has_value());
        CHECK(c->size() == b.size());
    }
}

TEST_CASE("check_witness hamming cube counting instance") {
    BiInvMetricGroup g = hamming_cube(4);
    CHECK(g.diameter() == 1);
    // balls of radius < 3/5 hold 11 of 16 points; a class of >= 8 must meet
    // every translate ball
    auto c = check_witness({g, {0, 1}, rat(3, 5), all_elems(g)});
    CHECK_FALSE(c.has_value());
}

TEST_CASE("check_witness monotone in eps and antitone in A") {
    BiInvMetricGroup g = hamming_cube(2);
    std::vector<int> b = all_elems(g);
    std::vector<Rat> epss = {rat(1, 4), rat(1, 2), rat(3, 4), rat(5, 4)};
    std::vector<std::vector<int>> as = {{0}, {0, 1}, {0, 1, 2}, all_elems(g)};
    for (const auto& a : as) {
        bool prev = false;
        for (const Rat& e : epss) {
            bool ok = !check_witness({g, a, e, b}).has_value();
            if (prev)
                CHECK(ok);  // once true, larger eps stays true
            prev = ok;
        }
    }
    for (const Rat& e : epss) {
        // shrinking A preserves truth
        for (size_t i = 1; i < as.size(); ++i)
            if (!check_witness({g, as[i], e, b}).has_value())
                CHECK_FALSE(check_witness({g, as[i - 1], e, b}).has_value());
    }
}

TEST_CASE("search_witness") {
    BiInvMetricGroup g = z2_unit();
    WitnessSearch s = search_witness(g, all_elems(g), Rat(2), 2);
    REQUIRE(s.found);
    CHECK(s.b == std::vector<int>{0});  // size then lex minimal

    WitnessSearch fail = search_witness(g, all_elems(g), rat(1, 2), 2);
    CHECK_FALSE(fail.found);
    CHECK(fail.subsets_tried == 3);  // {0}, {1}, {0,1}

    BiInvMetricGroup cube = hamming_cube(4);
    WitnessSearch w = search_witness(cube, {0, 1}, rat(3, 5), 3);
    REQUIRE(w.found);
    CHECK_FALSE(check_witness({cube, {0, 1}, rat(3, 5), w.b}).has_value());
}

TEST_CASE("sampled_falsifier") {
    BiInvMetricGroup g = z2_unit();
    // sound: never flags a true instance
    CHECK_FALSE(sampled_falsifier({g, all_elems(g), Rat(2), {0, 1}}, 1000, 7).has_value());
    // the failing instance defeats at least one of a handful of samples
    auto c = sampled_falsifier({g, all_elems(g), rat(1, 2), {0, 1}}, 16, 7);
    REQUIRE(c.has_value());
    // exact recheck: the returned coloring is a genuine defeat
    auto exact = check_witness({g, all_elems(g), rat(1, 2), {0, 1}});
    CHECK(exact.has_value());
    CHECK_THROWS(sampled_falsifier({g, {0}, Rat(1), {0}}, 0, 7));
}

TEST_CASE("sampled_witness_fraction bounds") {
    BiInvMetricGroup g = hamming_cube(2);
    Rat f = sampled_witness_fraction({g, {0, 1}, rat(3, 10), all_elems(g)}, 200, 11);
    CHECK(f >= 0);
    CHECK(f <= 1);
    // eps past the diameter: every coloring has a witness
    CHECK(sampled_witness_fraction({g, {0, 1}, Rat(2), all_elems(g)}, 50, 11) == 1);
}

TEST_CASE("validate_biinvariant") {
    FiniteGroup z5 = FiniteGroup::cyclic(5);
    std::vector<std::vector<Rat>> d(5, std::vector<Rat>(5));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            int k = std::min((i - j + 5) % 5, (j - i + 5) % 5);
            d[i][j] = Rat(k);
        }
    CHECK_FALSE(validate_biinvariant(z5, d).has_value());

    BiInvMetricGroup cube = hamming_cube(3);
    CHECK_FALSE(validate_biinvariant(cube.group(), cube.dist()).has_value());

    // left-invariant but not conjugation-invariant metric on S3
    std::vector<Perm> perms;
    Perm base = {0, 1, 2};
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    auto pidx = [&](const Perm& p) {
        return int(std::find(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            t[i][j] = pidx(perm_compose(perms[i], perms[j]));
    FiniteGroup s3(t);
    // length function with unequal values on the conjugate transpositions,
    // equal on mutually inverse 3-cycles
    std::vector<Rat> len(6);
    for (int i = 0; i < 6; ++i) {
        int fixed = 0;
        for (int x = 0; x < 3; ++x)
            fixed += perms[i][x] == x;
        if (fixed == 3)
            len[i] = Rat(0);
        else if (fixed == 1)
            len[i] = perms[i][0] == 0 ? Rat(1) : Rat(2);
        else
            len[i] = Rat(3);
    }
    std::vector<std::vector<Rat>> ld(6, std::vector<Rat>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            ld[i][j] = len[s3.mul(s3.inv(i), j)];
    auto viol = validate_biinvariant(s3, ld);
    REQUIRE(viol.has_value());
    auto [vg, k1, k2, vh] = *viol;
    CHECK(ld[s3.mul(s3.mul(vg, k1), vh)][s3.mul(s3.mul(vg, k2), vh)] != ld[k1][k2]);
}
