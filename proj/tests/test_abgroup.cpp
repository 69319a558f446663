#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "egw/abgroup.hpp"
#include "egw/finite_group.hpp"

using namespace egw;

namespace {

Angle ang(long n, long d) { return Angle(rat(n, d)); }

PrimaryBlock omega(long p, int n, int trunc = 2) {
    return PrimaryBlock{Int(p), n, std::nullopt, trunc};
}
PrimaryBlock fin(long p, int n, long mult) {
    return PrimaryBlock{Int(p), n, Int(mult), 1};
}

GroupElement e(const AbGroup& g, int t, long c = 1) {
    GroupElement v(g.num_generators(), 0);
    v[t] = c;
    return elem_reduce(g, v);
}

}  // namespace

TEST_CASE("has_star") {
    CHECK(has_star(AbGroup(0, {omega(2, 1)})));
    CHECK_FALSE(has_star(AbGroup(0, {omega(2, 1), fin(2, 2, 1)})));
    CHECK(has_star(AbGroup(0, {omega(2, 2), fin(2, 1, 1)})));
    CHECK_THROWS(has_star(AbGroup(1, {})));
}

TEST_CASE("h_gamma") {
    CHECK(h_gamma_order(AbGroup(0, {omega(2, 1), omega(3, 1)})) == 6);
    CHECK(h_gamma_order(AbGroup(0, {omega(2, 3)})) == 8);
    CHECK(h_gamma_order(AbGroup(0, {fin(2, 1, 5)})) == 1);
}

TEST_CASE("discon_obstruction") {
    auto w = discon_obstruction(AbGroup(0, {omega(2, 1), fin(2, 2, 1)}));
    REQUIRE(w.has_value());
    CHECK(w->first == 2);
    CHECK(w->second == 2);
    CHECK_FALSE(discon_obstruction(AbGroup(0, {omega(2, 1)})).has_value());
    auto w3 = discon_obstruction(AbGroup(0, {fin(3, 1, 2)}));
    REQUIRE(w3.has_value());
    CHECK(w3->first == 3);
    CHECK(w3->second == 1);
}

TEST_CASE("obstruction none iff star holds, exhaustive small descriptors") {
    std::vector<long> primes{2, 3, 5};
    // All descriptors with <= 2 blocks over p in {2,3,5}, n <= 2, mult in {1, omega}.
    std::vector<PrimaryBlock> pool;
    for (long p : primes)
        for (int n = 1; n <= 2; ++n) {
            pool.push_back(fin(p, n, 1));
            pool.push_back(omega(p, n, 1));
        }
    int checked = 0;
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) {
            if (i != j && pool[i].p == pool[j].p && pool[i].n == pool[j].n)
                continue;
            AbGroup g(0, i == j ? std::vector<PrimaryBlock>{pool[i]}
                                : std::vector<PrimaryBlock>{pool[i], pool[j]});
            CHECK(has_star(g) == !discon_obstruction(g).has_value());
            ++checked;
        }
    CHECK(checked > 100);
}

TEST_CASE("subgroup membership and expression") {
    AbGroup g(0, {fin(2, 2, 1), fin(3, 1, 1)});  // Z(4) + Z(3)
    Subgroup s(g, {e(g, 0, 2)});                 // <2> in the Z(4) part
    CHECK(s.contains(e(g, 0, 2)));
    CHECK(s.contains(e(g, 0, 0)));
    CHECK_FALSE(s.contains(e(g, 0, 1)));
    CHECK_FALSE(s.contains(e(g, 1, 1)));
    CHECK(s.least_multiple_inside(e(g, 0, 1)) == 2);
    CHECK(s.least_multiple_inside(e(g, 1, 1)) == 3);
    auto x = s.express(e(g, 0, 2));
    REQUIRE(x.has_value());
    CHECK(x->size() == 1);
}

TEST_CASE("extend_character basic example Z(4)") {
    AbGroup g(0, {fin(2, 2, 1)});
    Subgroup d(g, {e(g, 0, 2)});
    Character phi = extend_character(g, d, SubCharacter{{ang(1, 2)}});
    CHECK(phi.values[0] == ang(1, 4));  // tie-break picks 1/4 over 3/4
    CHECK(phi.eval(g, e(g, 0, 2)) == ang(1, 2));
}

TEST_CASE("extend_character trivial cases") {
    AbGroup g(0, {fin(2, 2, 1), fin(3, 1, 2)});
    Subgroup d(g, {e(g, 0, 2)});
    Character phi = extend_character(g, d, SubCharacter{{Angle()}});
    for (const auto& v : phi.values)
        CHECK(v.is_zero());
    // Delta = Gamma: values returned unchanged on the generators.
    std::vector<GroupElement> all;
    for (int t = 0; t < g.num_generators(); ++t)
        all.push_back(e(g, t));
    Subgroup full(g, all);
    SubCharacter th{{ang(1, 4), ang(1, 3), ang(2, 3)}};
    Character psi = extend_character(g, full, th);
    for (int t = 0; t < g.num_generators(); ++t)
        CHECK(psi.values[t] == th.values[t]);
}

TEST_CASE("extend_character rejects incompatible input") {
    AbGroup g(0, {fin(2, 2, 1)});
    Subgroup d(g, {e(g, 0, 2)});
    // g^2 has order 2; 1/3 is not killed by 2.
    CHECK_THROWS(extend_character(g, d, SubCharacter{{ang(1, 3)}}));
}

TEST_CASE("extend_character random instances restrict exactly") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PrimaryBlock> blocks;
        std::vector<long> ps{2, 3, 5};
        std::uniform_int_distribution<int> nb(1, 2), nn(1, 2), nm(1, 2);
        std::shuffle(ps.begin(), ps.end(), rng);
        int numblocks = nb(rng);
        for (int b = 0; b < numblocks; ++b)
            blocks.push_back(fin(ps[b], nn(rng), nm(rng)));
        AbGroup g(0, blocks);
        // Random subgroup generators.
        int ngens = nm(rng);
        std::vector<GroupElement> gens;
        for (int i = 0; i < ngens; ++i) {
            GroupElement v(g.num_generators());
            for (int t = 0; t < g.num_generators(); ++t) {
                std::uniform_int_distribution<long> cd(0, g.generator_order(t).get_si() - 1);
                v[t] = cd(rng);
            }
            gens.push_back(elem_reduce(g, v));
        }
        Subgroup d(g, gens);
        // Build theta as the restriction of a valid ambient character, so it
        // is always compatible.
        Character amb;
        for (int t = 0; t < g.num_generators(); ++t) {
            long q = g.generator_order(t).get_si();
            std::uniform_int_distribution<long> cd(0, q - 1);
            amb.values.push_back(ang(cd(rng), q));
        }
        REQUIRE_FALSE(check_character(g, amb).has_value());
        SubCharacter th;
        for (const auto& gen : gens)
            th.values.push_back(amb.eval(g, gen));
        Character phi = extend_character(g, d, th);
        CHECK_FALSE(check_character(g, phi).has_value());
        for (size_t j = 0; j < gens.size(); ++j)
            CHECK(phi.eval(g, gens[j]) == th.values[j]);
    }
}

TEST_CASE("dense_tuple_step spec example Z(8)") {
    AbGroup g(0, {fin(2, 3, 1)});
    Subgroup f(g, {e(g, 0, 4)});
    auto res = dense_tuple_step(g, f, {SubCharacter{{ang(1, 2)}}}, {ang(1, 8)}, rat(1, 3));
    // k = 4, roots of 1/2 are {1/8, 3/8, 5/8, 7/8}; nearest to 1/8 is exact.
    CHECK(res.chars.size() == 1);
    CHECK(res.chars[0].eval(g, res.gamma0) == ang(1, 8));
    CHECK(res.chars[0].eval(g, e(g, 0, 4)) == ang(1, 2));
}

TEST_CASE("dense_tuple_step trivial F") {
    AbGroup g(0, {fin(2, 3, 1)});
    Subgroup f(g, {});
    auto res = dense_tuple_step(g, f, {SubCharacter{{}}}, {Angle()}, rat(1, 2));
    CHECK(angle_dist(res.chars[0].eval(g, res.gamma0), Angle()) < rat(1, 2));
}

TEST_CASE("dense_tuple_step insufficient order") {
    AbGroup g(0, {fin(2, 1, 1)});
    Subgroup f(g, {e(g, 0, 1)});
    // |F|/eps = 2/(1/4) = 8 exceeds every order in Z(2).
    CHECK_THROWS(dense_tuple_step(g, f, {SubCharacter{{Angle()}}}, {Angle()}, rat(1, 4)));
}

TEST_CASE("hit_target_bounded fresh generator") {
    AbGroup g(0, {omega(2, 1, 2)});
    Subgroup d(g, {e(g, 0)});
    auto res = hit_target_bounded(g, d, {SubCharacter{{Angle()}}}, {ang(1, 2)});
    CHECK(res.chars[0].eval(g, res.gamma) == ang(1, 2));
    CHECK(res.chars[0].eval(g, e(g, 0)) == Angle());
}

TEST_CASE("hit_target_bounded identity target") {
    AbGroup g(0, {omega(2, 1, 2)});
    Subgroup d(g, {});
    auto res = hit_target_bounded(g, d, {SubCharacter{{}}}, {Angle()});
    CHECK(res.chars[0].eval(g, res.gamma) == Angle());
}

TEST_CASE("hit_target_bounded across two prime blocks") {
    AbGroup g(0, {omega(2, 1, 1), omega(3, 1, 1)});
    Subgroup d(g, {});
    auto res = hit_target_bounded(g, d, {SubCharacter{{}}}, {ang(1, 6)});
    CHECK(res.chars[0].eval(g, res.gamma) == ang(1, 6));
    CHECK(elem_order(g, res.gamma) == 6);
}

TEST_CASE("hit_target_bounded truncation exhausted") {
    AbGroup g(0, {omega(2, 1, 1)});
    Subgroup d(g, {e(g, 0)});  // the only order-2 generator is spent
    CHECK_THROWS(hit_target_bounded(g, d, {SubCharacter{{Angle()}}}, {ang(1, 2)}));
}

TEST_CASE("hit_target_bounded exact equality on random star groups") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long> ps{2, 3, 5};
        std::shuffle(ps.begin(), ps.end(), rng);
        std::uniform_int_distribution<int> nb(1, 2), nn(1, 2);
        int numblocks = nb(rng);
        std::vector<PrimaryBlock> blocks;
        Int n_h = 1;
        for (int b = 0; b < numblocks; ++b) {
            int n = nn(rng);
            blocks.push_back(omega(ps[b], n, 3));
            Int q = 1;
            for (int i = 0; i < n; ++i)
                q *= ps[b];
            n_h = n_h / gcd(n_h, q) * q;
        }
        AbGroup g(0, blocks);
        REQUIRE(has_star(g));
        // Delta generated by the first generator of each block.
        std::vector<GroupElement> dgens;
        dgens.push_back(e(g, 0));
        Subgroup d(g, dgens);
        SubCharacter psi;
        long q0 = g.generator_order(0).get_si();
        std::uniform_int_distribution<long> cd(0, q0 - 1);
        psi.values.push_back(ang(cd(rng), q0));
        // Random n-tuple target in H_Gamma, n in {1,2}.
        std::uniform_int_distribution<int> na(1, 2);
        int arity = na(rng);
        TorusPoint x;
        std::vector<SubCharacter> psis;
        std::uniform_int_distribution<long> xd(0, n_h.get_si() - 1);
        for (int i = 0; i < arity; ++i) {
            x.push_back(ang(xd(rng), n_h.get_si()));
            psis.push_back(psi);
        }
        auto res = hit_target_bounded(g, d, psis, x);
        for (int i = 0; i < arity; ++i) {
            CHECK(res.chars[i].eval(g, res.gamma) == x[i]);
            CHECK(res.chars[i].eval(g, dgens[0]) == psi.values[0]);
        }
    }
}

TEST_CASE("in_cyclic_closure") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    CHECK(z4.in_cyclic_closure(2, 0));   // identity is always a power
    CHECK_FALSE(z4.in_cyclic_closure(2, 1));
    FiniteGroup z5 = FiniteGroup::cyclic(5);
    CHECK(z5.in_cyclic_closure(2, 3));   // powers of 2 mod 5: 2,4,3,1
    CHECK_THROWS(z5.in_cyclic_closure(2, 9));
}

TEST_CASE("covering_radius_torus") {
    CHECK(covering_radius_torus({{ang(1, 2)}}) == rat(1, 4));
    CHECK(covering_radius_torus({{ang(1, 3), ang(1, 5)}}) == rat(1, 6));
    CHECK(covering_radius_torus({{Angle()}}) == rat(1, 2));
    CHECK_THROWS(covering_radius_torus({}));
}

TEST_CASE("covering radius for coprime cyclic generators") {
    // <(1/q1, ..., 1/qn)> with pairwise coprime q_i covers at max_i 1/(2 q_i).
    std::vector<std::vector<long>> cases{{2, 3}, {3, 4}, {2, 5}, {3, 5}};
    for (const auto& qs : cases) {
        TorusPoint gen;
        Rat expect(0);
        for (long q : qs) {
            gen.push_back(ang(1, q));
            expect = std::max(expect, rat(1, 2 * q));
        }
        CHECK(covering_radius_torus({gen}) == expect);
    }
}
