#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egw/metspace.hpp"
#include "egw/rational.hpp"

namespace egw {

// A one-point distance profile over part of a space: candidate distances
// from a new point to the support points.
struct KatetovFn {
    std::vector<int> support;  // point indices, strictly increasing
    std::vector<Rat> values;   // aligned with support, positive

    bool operator==(const KatetovFn&) const = default;
    bool operator<(const KatetovFn& o) const {
        return std::tie(support, values) < std::tie(o.support, o.values);
    }
};

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nullopt if f satisfies |f(x)-f(y)| <= d(x,y) <= f(x)+f(y) on its support;
// otherwise the violating pair of support positions. Shape errors throw.
std::optional<std::pair<int, int>> katetov_violation(const FinMetric& x, const KatetovFn& f);

// Extension of f off its support: min over support of f(p) + d(p, y),
// optionally capped (valid when diam(x) <= cap).
Rat katetov_hat(const FinMetric& x, const KatetovFn& f, int y,
                const std::optional<Rat>& cap = std::nullopt);

// Adjoin one point at the distances given by the canonical extension of f.
FinMetric one_point_extension(const FinMetric& x, const KatetovFn& f,
                              const std::string& label = "",
                              const std::optional<Rat>& cap = std::nullopt);

struct ActionExtension {
    FinMetric space;
    IsoAction action;
    int new_points = 0;
};

// Adjoin the orbit of f under the action (g.f = f after relabeling the
// support by g) and extend the action over the new points.
ActionExtension extend_action(const FinMetric& x, const IsoAction& alpha, const KatetovFn& f);

struct SaturateParams {
    int support_max = 2;   // s
    long den_max = 1;      // D: value denominators at most D
    Rat value_max = Rat(1);  // R: values (and resulting diameter) at most R
    int guard_size = 512;
    unsigned long long seed = 1;  // for the witness distance profiles
};

struct TowerRecord {
    int round = 0;
    KatetovFn fn;       // over point indices of the space at addition time
    std::string label;  // name of the realizing point
};

struct SaturateResult {
    FinMetric space;
    std::vector<TowerRecord> tower;
    int rounds = 0;
};

// All positive rationals with denominator <= den_max and value <= value_max.
std::vector<Rat> value_grid(long den_max, const Rat& value_max);

// Grow x until every grid profile on at most support_max points is realized
// by some point. Each witness is adjoined as a full-support one-point
// extension whose free distances are drawn from the grid (seeded), which
// keeps the tower generic and lets later catalogue entries reuse earlier
// witnesses. Distances are capped at value_max. Throws GuardError if the
// space would exceed guard_size points.
SaturateResult saturate(const FinMetric& x, const SaturateParams& params);

// First unrealized catalogue entry of a space, or nullopt if the extension
// property holds for these parameters.
std::optional<KatetovFn> saturation_gap(const FinMetric& x, const SaturateParams& params);

// Words of length dim over an alphabet of the given size, with distance
// unit * min(cap_units, hamming distance). For alphabet >= 3 and
// dim >= cap_units this space realizes every pair profile over the grid
// {unit, 2*unit, ..., cap_units*unit}: with three or more symbols any
// target pair of hamming distances within the Katetov bounds can be hit
// coordinate by coordinate. Useful as a pre-saturated seed.
FinMetric capped_hamming_space(int alphabet, int dim, const Rat& unit, int cap_units);

struct PartialMap {
    std::vector<int> domain;
    std::vector<int> image;  // aligned with domain
};

struct IsometryExtension {
    FinMetric space;        // extension of the input space
    Perm map;               // total self-isometry when succeeded
    bool succeeded = false;
    std::string failure;    // report when the catalogue ran out
};

// Back-and-forth completion of a partial distance-preserving injection to a
// total isometry, preferring existing points and adjoining Katetov points
// when none fits. cap should match the cap the space was saturated with.
IsometryExtension extend_partial_isometry(const FinMetric& x, const PartialMap& p,
                                          int guard_size = 512,
                                          const std::optional<Rat>& cap = std::nullopt);

}  // namespace egw
