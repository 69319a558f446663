#pragma once

#include <array>
#include <optional>
#include <vector>

#include "egw/metspace.hpp"
#include "egw/rational.hpp"

namespace egw {

// One oscillation-stability query: does B witness the (eps, A) condition in G?
struct OscInstance {
    BiInvMetricGroup g;
    std::vector<int> a;  // element indices into g
    Rat eps;
    std::vector<int> b;  // candidate witness, element indices into g
};

// nullopt when every 2-coloring c of B admits i and g with: for all a in A
// some k colored i has d(g*a, k) < eps. Otherwise a defeating coloring,
// aligned with B. Exhaustive over colorings; |B| capped.
std::optional<std::vector<int>> check_witness(const OscInstance& inst, int exhaustive_cap = 20);

struct WitnessSearch {
    bool found = false;
    std::vector<int> b;  // smallest witness, by size then lexicographic
    long subsets_tried = 0;
};

// Scan subsets of G of size 1..max_b in size-then-lex order for a witness.
WitnessSearch search_witness(const BiInvMetricGroup& g, const std::vector<int>& a,
                             const Rat& eps, int max_b);

// Random colorings instead of all of them; a returned counterexample is
// checked exactly before being reported.
std::optional<std::vector<int>> sampled_falsifier(const OscInstance& inst, int trials,
                                                  unsigned long long seed);

// Fraction of `trials` sampled colorings of B that admit an (i, g) witness.
Rat sampled_witness_fraction(const OscInstance& inst, int trials, unsigned long long seed);

// First (g, k1, k2, h) with delta(g k1 h, g k2 h) != delta(k1, k2), if any.
std::optional<std::array<int, 4>> validate_biinvariant(const FiniteGroup& group,
                                                       const std::vector<std::vector<Rat>>& dist);

// (Z/2)^k with the Hamming metric scaled to diameter 1.
BiInvMetricGroup hamming_cube(int k);

}  // namespace egw
