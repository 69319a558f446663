#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "egw/freeprod.hpp"

using namespace egw;

namespace {

Word wab(const std::vector<long>& e) {
    return Word{{syl_ab(std::vector<Int>(e.begin(), e.end()))}};
}

Word wfree(const std::vector<int>& l) { return Word{{syl_free(l)}}; }

Word rand_word(std::mt19937_64& rng, int d, int n, int len) {
    std::uniform_int_distribution<int> kind(0, d + 2 * n - 1);
    Word w;
    for (int i = 0; i < len; ++i) {
        int k = kind(rng);
        if (k < d) {
            std::vector<Int> e(d, 0);
            e[k] = Int(int(rng() % 7) - 3);
            if (e[k] == 0)
                e[k] = 1;
            w.syl.push_back(syl_ab(e));
        } else {
            int j = (k - d) / 2 + 1;
            w.syl.push_back(syl_free({(k - d) % 2 ? -j : j}));
        }
    }
    return word_normalize(d, n, w);
}

}  // namespace

TEST_CASE("normal form basics") {
    CHECK(word_defect(1, 1, Word{}) == "");
    Word w{{syl_ab({Int(2)}), syl_free({1, -1})}};
    CHECK(word_defect(1, 1, w) != "");  // unreduced free syllable
    Word nf = word_normalize(1, 1, w);
    CHECK(nf == wab({2}));
    CHECK(word_defect(1, 1, nf) == "");

    // cancellation across a collapsing abelian syllable
    Word x{{syl_free({1}), syl_ab({Int(1)}), syl_ab({Int(-1)}), syl_free({-1})}};
    CHECK(word_normalize(1, 1, x).identity());

    CHECK_THROWS(word_normalize(1, 1, wfree({2})));
    CHECK_THROWS(word_normalize(1, 1, wab({1, 1})));
}

TEST_CASE("normalization is idempotent and multiplicative") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        Word u = rand_word(rng, 2, 2, 4), v = rand_word(rng, 2, 2, 4);
        CHECK(word_normalize(2, 2, u) == u);
        Word cat{u.syl};
        cat.syl.insert(cat.syl.end(), v.syl.begin(), v.syl.end());
        CHECK(word_mul(2, 2, u, v) == word_normalize(2, 2, cat));
        CHECK(word_mul(2, 2, u, word_inverse(u)).identity());
        CHECK(word_defect(2, 2, word_mul(2, 2, u, v)) == "");
    }
}

TEST_CASE("max_exponent") {
    auto m0 = max_exponent({});
    CHECK(m0.n == 0);
    CHECK(m0.m == 1);
    auto m1 = max_exponent({wab({2})});
    CHECK(m1.n == 2);
    CHECK(m1.m == 5);
    Word w = word_mul(1, 2, word_mul(1, 2, wfree({1}), wab({-3})), wfree({2}));
    auto m2 = max_exponent({w});
    CHECK(m2.n == 3);
    CHECK(m2.m == 7);
}

TEST_CASE("exponent_reduce") {
    CHECK(exponent_reduce(wab({5}), {Int(5)}, 0).identity());
    CHECK(exponent_reduce(wab({2}), {Int(5)}, 0) == wab({2}));
    CHECK(exponent_reduce(wab({-1}), {Int(5)}, 0) == wab({4}));
    // syllables merge once the abelian part collapses
    Word w{{syl_free({1}), syl_ab({Int(5)}), syl_free({1})}};
    CHECK(exponent_reduce(w, {Int(5)}, 1) == wfree({1, 1}));
    CHECK_THROWS(exponent_reduce(wab({1}), {Int(0)}, 0));
}

TEST_CASE("separating_quotient regular abelian action") {
    PermQuotient q = separating_quotient({Int(5)}, 0, {wab({1}), wab({2})});
    CHECK(q.carrier.size() == 5);
    CHECK(q.labels[q.base] == "1");
    for (const Word& w : {wab({1}), wab({2})})
        CHECK(q.act(w)[q.base] != q.base);
    CHECK(perm_order(q.abelian_perms[0]) == 5);
}

TEST_CASE("separating_quotient trivial and mixed words") {
    PermQuotient t = separating_quotient({Int(2)}, 1, {});
    CHECK(t.carrier.size() == 2);  // identity coset of Z(2)

    Word ga = word_mul(1, 1, wab({1}), wfree({1}));
    PermQuotient q = separating_quotient({Int(2)}, 1, {ga});
    // prefixes 1, g, g a1 close into two Z(2) cosets
    CHECK(q.carrier.size() == 4);
    Perm p = q.act(ga);
    CHECK(p[q.base] != q.base);
    CHECK(q.carrier[p[q.base]] == ga);
    CHECK(is_permutation(q.free_perms[0]));

    CHECK_THROWS(separating_quotient({Int(5)}, 0, {wab({5})}));  // collapses
}

TEST_CASE("completion never rewrites defined values") {
    Word ga = word_mul(1, 1, wab({1}), wfree({1}));
    PermQuotient q = separating_quotient({Int(2)}, 1, {ga});
    std::map<Word, int> idx;
    for (size_t i = 0; i < q.carrier.size(); ++i)
        idx[q.carrier[i]] = int(i);
    for (size_t u = 0; u < q.carrier.size(); ++u) {
        Word target = word_mul(1, 1, q.carrier[u], wfree({1}));
        Word red = exponent_reduce(target, q.moduli, 1);
        auto it = idx.find(red);
        if (it != idx.end())
            CHECK(q.free_perms[0][u] == it->second);
    }
}

TEST_CASE("build_quotient examples") {
    auto r1 = build_quotient(1, 0, {wab({1}), wab({2})}, {Int(5)});
    CHECK(r1.q.carrier.size() == 5);
    CHECK(perm_order(r1.q.abelian_perms[0]) == 5);

    auto r2 = build_quotient(2, 0, {wab({1, 0}), wab({0, 1}), wab({1, 1})}, {Int(5), Int(7)});
    CHECK(perm_order(r2.q.abelian_perms[0]) == 5);
    CHECK(perm_order(r2.q.abelian_perms[1]) == 7);
    CHECK(perm_compose(r2.q.abelian_perms[0], r2.q.abelian_perms[1]) ==
          perm_compose(r2.q.abelian_perms[1], r2.q.abelian_perms[0]));

    auto r3 = build_quotient(1, 0, {}, {Int(5)});
    CHECK(perm_order(r3.q.abelian_perms[0]) == 5);

    CHECK_THROWS(build_quotient(1, 0, {wab({3})}, {Int(5)}));       // 5 < M = 7
    CHECK_THROWS(build_quotient(1, 0, {wab({1})}, {Int(4)}));       // not prime
    CHECK_THROWS(build_quotient(2, 0, {}, {Int(3), Int(3)}));       // repeated
    CHECK(build_quotient(1, 0, {wab({1})}, {Int(4)}, true).q.carrier.size() == 4);
}

TEST_CASE("build_quotient random instances") {
    std::mt19937_64 rng(33);
    std::vector<Int> primes = {Int(11), Int(13)};
    int done = 0;
    while (done < 40) {
        int d = 1 + int(rng() % 2), n = int(rng() % 3);
        std::vector<Word> c;
        for (int i = 0; i < 3; ++i)
            c.push_back(rand_word(rng, d, n, 1 + int(rng() % 4)));
        std::vector<Int> p(primes.begin(), primes.begin() + d);
        if (max_exponent(c).m > p[0])
            continue;
        auto res = build_quotient(d, n, c, p);
        // postconditions are verified inside; spot-check injectivity here
        std::set<std::vector<int>> images;
        std::set<Word> dedup(c.begin(), c.end());
        for (const Word& w : dedup)
            images.insert(res.q.act(w));
        CHECK(images.size() == dedup.size());
        ++done;
    }
}
