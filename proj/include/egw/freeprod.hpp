#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "egw/finite_group.hpp"
#include "egw/rational.hpp"

namespace egw {

// One syllable of a word in Z^d * F_n: either an exponent vector over the
// commuting generators e_1..e_d or a reduced string of free letters, where
// letter +j stands for a_j and -j for its inverse.
struct Syllable {
    std::vector<Int> exps;
    std::vector<int> letters;

    bool abelian() const { return !exps.empty(); }
    bool operator==(const Syllable&) const = default;
    bool operator<(const Syllable& o) const {
        return std::tie(exps, letters) < std::tie(o.exps, o.letters);
    }
};

// Normal form: syllables alternate between the blocks, none trivial.
struct Word {
    std::vector<Syllable> syl;

    bool identity() const { return syl.empty(); }
    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const { return syl < o.syl; }
};

Syllable syl_ab(const std::vector<Int>& exps);
Syllable syl_free(const std::vector<int>& letters);

// nullopt-style validation: empty string when w is in normal form for the
// given ranks, else a description of the first defect.
std::string word_defect(int d, int n, const Word& w);

Word word_normalize(int d, int n, const Word& w);
Word word_mul(int d, int n, const Word& u, const Word& v);
Word word_inverse(const Word& w);
std::string word_str(const Word& w);

struct MaxExponent {
    Int n;  // largest |coordinate| over abelian syllables
    Int m;  // 2n + 1
};

MaxExponent max_exponent(const std::vector<Word>& c);

// Project the abelian part onto prod Z(p_i): exponents into [0, p_i), with
// the usual renormalization of collapsed syllables.
Word exponent_reduce(const Word& w, const std::vector<Int>& p, int n);

// Finite permutation model of prod Z(p_i) * F_n built from a word set: the
// carrier holds every generator-step prefix of the words, closed into full
// right cosets of the abelian part, and each free generator's partial
// right-multiplication map completed to a permutation.
struct PermQuotient {
    std::vector<Int> moduli;
    int free_rank = 0;
    std::vector<Word> carrier;          // sorted; carrier[base] is the identity
    std::vector<std::string> labels;
    std::vector<Perm> abelian_perms;    // right multiplication by e_i
    std::vector<Perm> free_perms;       // right multiplication by a_j
    int base = 0;

    // Image permutation of a word (exponents are reduced first).
    Perm act(const Word& w) const;
};

PermQuotient separating_quotient(const std::vector<Int>& p, int n,
                                 const std::vector<Word>& c2, size_t carrier_cap = 200000);

struct QuotientResult {
    PermQuotient q;
    MaxExponent bound;
};

// Quotient of Z^d * F_n separating a finite word set C, with q(e_i) of order
// exactly p_i. Requires distinct primes p_i >= M(C) unless relaxed, in which
// case any moduli >= M(C) are accepted; all postconditions are re-verified
// either way.
QuotientResult build_quotient(int d, int n, const std::vector<Word>& c,
                              const std::vector<Int>& p, bool relaxed = false,
                              size_t carrier_cap = 200000);

}  // namespace egw
