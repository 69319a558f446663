#include "egw/oscheck.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>

namespace egw {

namespace {

// bitsets over B, 64 points per word
using Bits = std::vector<uint64_t>;

void validate_instance(const OscInstance& inst) {
    if (!(inst.eps > 0))
        throw std::invalid_argument("epsilon must be positive");
    std::set<int> seen;
    for (int x : inst.a)
        if (x < 0 || x >= inst.g.size())
            throw std::invalid_argument("A contains an element outside the group");
    for (int x : inst.b) {
        if (x < 0 || x >= inst.g.size())
            throw std::invalid_argument("B contains an element outside the group");
        if (!seen.insert(x).second)
            throw std::invalid_argument("B has a repeated element");
    }
}

// masks[g][a]: bits over B of the points within eps of g*a.
std::vector<std::vector<Bits>> ball_masks(const OscInstance& inst) {
    int n = inst.g.size();
    size_t nw = (inst.b.size() + 63) / 64;
    std::vector<std::vector<Bits>> masks(
        n, std::vector<Bits>(inst.a.size(), Bits(nw, 0)));
    for (int g = 0; g < n; ++g)
        for (size_t ai = 0; ai < inst.a.size(); ++ai) {
            int ga = inst.g.group().mul(g, inst.a[ai]);
            for (size_t k = 0; k < inst.b.size(); ++k)
                if (inst.g.d(ga, inst.b[k]) < inst.eps)
                    masks[g][ai][k / 64] |= uint64_t(1) << (k % 64);
        }
    return masks;
}

bool intersects(const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

bool coloring_has_witness(const std::vector<std::vector<Bits>>& masks, const Bits& cls1,
                          const Bits& full) {
    Bits cls0(full.size());
    for (size_t i = 0; i < full.size(); ++i)
        cls0[i] = full[i] & ~cls1[i];
    for (const auto& row : masks)
        for (const Bits* cls : {const_cast<const Bits*>(&cls0), &cls1}) {
            bool ok = true;
            for (const Bits& m : row)
                ok = ok && intersects(m, *cls);
            if (ok)
                return true;
        }
    return false;
}

Bits full_mask(size_t nb) {
    Bits full((nb + 63) / 64, ~uint64_t(0));
    if (nb % 64)
        full.back() = (uint64_t(1) << (nb % 64)) - 1;
    if (nb == 0)
        full.assign(1, 0);
    return full;
}

Bits random_coloring(std::mt19937_64& rng, const Bits& full) {
    Bits cls(full.size());
    for (size_t i = 0; i < full.size(); ++i)
        cls[i] = rng() & full[i];
    return cls;
}

std::vector<int> unpack_coloring(const Bits& cls1, size_t nb) {
    std::vector<int> c(nb);
    for (size_t k = 0; k < nb; ++k)
        c[k] = (cls1[k / 64] >> (k % 64) & 1) ? 1 : 0;
    return c;
}

}  // namespace

std::optional<std::vector<int>> check_witness(const OscInstance& inst, int exhaustive_cap) {
    validate_instance(inst);
    int nb = static_cast<int>(inst.b.size());
    if (nb > exhaustive_cap || nb > 62)
        throw std::length_error("witness set too large for exhaustive coloring scan");
    auto masks = ball_masks(inst);
    Bits full = full_mask(inst.b.size());
    uint64_t top = nb == 0 ? 0 : full[0] / 2;
    // complementary colorings are equivalent under the i quantifier
    for (uint64_t w = 0; w <= top; ++w) {
        if (!coloring_has_witness(masks, {w}, full))
            return unpack_coloring({w}, inst.b.size());
    }
    return std::nullopt;
}

WitnessSearch search_witness(const BiInvMetricGroup& g, const std::vector<int>& a,
                             const Rat& eps, int max_b) {
    WitnessSearch out;
    int n = g.size();
    for (int size = 1; size <= std::min(max_b, n); ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i)
            idx[i] = i;
        while (true) {
            ++out.subsets_tried;
            if (!check_witness({g, a, eps, idx}, max_b).has_value()) {
                out.found = true;
                out.b = idx;
                return out;
            }
            int t = size - 1;
            while (t >= 0 && idx[t] == n - size + t)
                --t;
            if (t < 0)
                break;
            ++idx[t];
            for (int i = t + 1; i < size; ++i)
                idx[i] = idx[i - 1] + 1;
        }
    }
    return out;
}

std::optional<std::vector<int>> sampled_falsifier(const OscInstance& inst, int trials,
                                                  unsigned long long seed) {
    validate_instance(inst);
    if (trials < 1)
        throw std::invalid_argument("need at least one trial");
    auto masks = ball_masks(inst);
    Bits full = full_mask(inst.b.size());
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Bits cls1 = random_coloring(rng, full);
        if (!coloring_has_witness(masks, cls1, full))
            return unpack_coloring(cls1, inst.b.size());
    }
    return std::nullopt;
}

Rat sampled_witness_fraction(const OscInstance& inst, int trials, unsigned long long seed) {
    validate_instance(inst);
    if (trials < 1)
        throw std::invalid_argument("need at least one trial");
    auto masks = ball_masks(inst);
    Bits full = full_mask(inst.b.size());
    std::mt19937_64 rng(seed);
    long hits = 0;
    for (int t = 0; t < trials; ++t)
        if (coloring_has_witness(masks, random_coloring(rng, full), full))
            ++hits;
    return rat(hits, trials);
}

std::optional<std::array<int, 4>> validate_biinvariant(
    const FiniteGroup& group, const std::vector<std::vector<Rat>>& dist) {
    return BiInvMetricGroup::check_biinvariance(group, dist);
}

BiInvMetricGroup hamming_cube(int k) {
    if (k < 1 || k > 16)
        throw std::invalid_argument("cube dimension out of range");
    FiniteGroup g = FiniteGroup::boolean_cube(k);
    int n = g.size();
    std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            d[i][j] = rat(__builtin_popcount(unsigned(i ^ j)), k);
    return BiInvMetricGroup(g, d);
}

}  // namespace egw
