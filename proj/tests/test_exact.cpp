#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "egw/angle.hpp"
#include "egw/cyclo.hpp"

using namespace egw;

namespace {

Angle ang(long n, long d) { return Angle(rat(n, d)); }

std::mt19937_64 rng(0xE6A7);

Angle random_angle() {
    std::uniform_int_distribution<long> den(1, 24);
    long d = den(rng);
    std::uniform_int_distribution<long> num(0, d - 1);
    return ang(num(rng), d);
}

}  // namespace

TEST_CASE("angle normalization") {
    CHECK(Angle(rat(5, 4)).value() == rat(1, 4));
    CHECK(Angle(rat(-1, 4)).value() == rat(3, 4));
    CHECK(Angle(rat(-3, 2)).value() == rat(1, 2));
    CHECK(Angle(rat(2)).value() == 0);
    CHECK(ang(1, 4).order() == 4);
}

TEST_CASE("angle_dist examples") {
    CHECK(angle_dist(ang(1, 4), ang(3, 4)) == rat(1, 2));
    CHECK(angle_dist(Angle(), Angle()) == 0);
    CHECK(angle_dist(ang(1, 8), ang(7, 8)) == rat(1, 4));
}

TEST_CASE("angle_dist metric axioms and translation invariance") {
    std::vector<Angle> pts;
    for (int i = 0; i < 24; ++i)
        pts.push_back(random_angle());
    for (const auto& a : pts)
        for (const auto& b : pts) {
            CHECK(angle_dist(a, b) == angle_dist(b, a));
            CHECK((angle_dist(a, b) == 0) == (a == b));
            CHECK(angle_dist(a, b) <= rat(1, 2));
            for (const auto& c : pts) {
                CHECK(angle_dist(a, c) <= angle_dist(a, b) + angle_dist(b, c));
                CHECK(angle_dist(a, b) == angle_dist(a + c, b + c));
            }
        }
}

TEST_CASE("torus_dist_max examples") {
    TorusPoint o{Angle(), Angle()};
    CHECK(torus_dist_max(o, o) == 0);
    CHECK(torus_dist_max(o, {ang(1, 2), ang(1, 4)}) == rat(1, 2));
    CHECK(torus_dist_max({ang(1, 8), ang(1, 8)}, {ang(7, 8), ang(1, 8)}) == rat(1, 4));
    CHECK_THROWS(torus_dist_max(o, {Angle()}));
}

TEST_CASE("kth_roots") {
    auto r = kth_roots(Angle(), 2);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == Angle());
    CHECK(r[1] == ang(1, 2));

    r = kth_roots(ang(1, 3), 2);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == ang(1, 6));
    CHECK(r[1] == ang(2, 3));

    r = kth_roots(ang(1, 2), 3);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == ang(1, 6));
    CHECK(r[1] == ang(1, 2));
    CHECK(r[2] == ang(5, 6));
}

TEST_CASE("kth_roots spacing and defining equation") {
    for (int trial = 0; trial < 50; ++trial) {
        Angle a = random_angle();
        std::uniform_int_distribution<long> kd(1, 12);
        Int k = kd(rng);
        auto roots = kth_roots(a, k);
        REQUIRE(Int(roots.size()) == k);
        for (size_t i = 0; i < roots.size(); ++i) {
            CHECK(roots[i] * k == a);
            if (i + 1 < roots.size())
                CHECK((roots[i + 1] - roots[i]).value() == Rat(1) / Rat(k));
        }
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == Poly{rat(-1), rat(1)});
    CHECK(cyclotomic_poly(2) == Poly{rat(1), rat(1)});
    CHECK(cyclotomic_poly(6) == Poly{rat(1), rat(-1), rat(1)});
    CHECK(cyclotomic_poly(4) == Poly{rat(1), rat(0), rat(1)});
    // deg Phi_m = phi(m)
    CHECK(cyclotomic_poly(12).size() == 5);
    CHECK(cyclotomic_poly(7).size() == 7);
}

TEST_CASE("cyclo arithmetic is a field") {
    const unsigned long m = 12;
    auto z = [&](long j) { return CycloNumber::zeta_pow(m, j); };
    // zeta powers multiply additively in the exponent
    for (long a = 0; a < 12; ++a)
        for (long b = 0; b < 12; ++b)
            CHECK(z(a) * z(b) == z(a + b));
    // associativity and inverses on a few composite elements
    CycloNumber x = z(1) + z(5);
    CycloNumber y = z(2) - CycloNumber(m, rat(3));
    CycloNumber w = z(7) + CycloNumber(m, rat(1, 2));
    CHECK((x * y) * w == x * (y * w));
    for (const auto& v : {x, y, w}) {
        if (v.is_zero())
            continue;
        CHECK(v * v.inverse() == CycloNumber(m, rat(1)));
    }
    CHECK_THROWS(CycloNumber(m, rat(0)).inverse());
}

TEST_CASE("cyclo conjugation") {
    const unsigned long m = 5;
    auto z = CycloNumber::zeta_pow(m, 1);
    CHECK(z.conj() == CycloNumber::zeta_pow(m, 4));
    CHECK(z.norm_sq() == CycloNumber(m, rat(1)));
    // |1 + zeta|^2 = 2 + zeta + zeta^{-1}
    auto v = CycloNumber(m, rat(1)) + z;
    CHECK(v.norm_sq() == CycloNumber(m, rat(2)) + z + z.conj());
}

TEST_CASE("cyclo_det examples") {
    const unsigned long m = 2;
    CycloNumber one(m, rat(1)), zeta = CycloNumber::zeta_pow(m, 1);
    // identity
    CHECK(cyclo_det({{one, CycloNumber(m, rat(0))}, {CycloNumber(m, rat(0)), one}}) == one);
    // equal rows
    CHECK(cyclo_det({{one, zeta}, {one, zeta}}).is_zero());
    // [[1,1],[1,zeta_2]] -> zeta_2 - 1 = -2
    CHECK(cyclo_det({{one, one}, {one, zeta}}) == CycloNumber(m, rat(-2)));
    CHECK_THROWS(cyclo_det({{one, one}}));
}

TEST_CASE("vandermonde on distinct roots of unity is nonzero") {
    const unsigned long m = 8;
    std::vector<long> exps{0, 1, 3, 5};
    size_t n = exps.size();
    std::vector<std::vector<CycloNumber>> a(n, std::vector<CycloNumber>(n, CycloNumber(m, rat(0))));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a[i][j] = CycloNumber::zeta_pow(m, exps[i] * static_cast<long>(j));
    CHECK(!cyclo_det(a).is_zero());
}

TEST_CASE("from_angle embedding") {
    const unsigned long m = 12;
    CHECK(CycloNumber::from_angle(m, Angle(rat(1, 4))) == CycloNumber::zeta_pow(m, 3));
    CHECK(CycloNumber::from_angle(m, Angle(rat(1, 3))) == CycloNumber::zeta_pow(m, 4));
    CHECK_THROWS(CycloNumber::from_angle(m, Angle(rat(1, 5))));
    // ζ^j · ζ^k = ζ^{j+k mod m} through the angle embedding
    for (long j = 0; j < 12; ++j)
        for (long k = 0; k < 12; ++k)
            CHECK(CycloNumber::from_angle(m, Angle(rat(j, 12))) *
                      CycloNumber::from_angle(m, Angle(rat(k, 12))) ==
                  CycloNumber::from_angle(m, Angle(rat(j + k, 12))));
}
