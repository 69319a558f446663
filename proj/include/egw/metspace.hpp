#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "egw/finite_group.hpp"
#include "egw/rational.hpp"

namespace egw {

struct MetricViolation {
    std::string kind;  // "symmetry" | "diagonal" | "positivity" | "triangle" | "shape"
    std::vector<int> points;
    std::string message;
};

// Finite rational metric space; axioms checked on construction.
class FinMetric {
  public:
    FinMetric(std::vector<std::string> labels, std::vector<std::vector<Rat>> dist);

    static std::optional<MetricViolation> check(const std::vector<std::vector<Rat>>& dist);

    int size() const { return static_cast<int>(labels_.size()); }
    const Rat& d(int i, int j) const { return dist_[i][j]; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<Rat>>& dist() const { return dist_; }
    Rat diameter() const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<Rat>> dist_;
};

// Distance-preserving action of a finite group on a FinMetric.
struct IsoAction {
    FiniteGroup group;
    std::vector<Perm> perms;  // one per group element

    // Throws on any failed homomorphism/isometry check.
    void validate(const FinMetric& space) const;
    bool faithful() const;
};

// Finite group with a bi-invariant rational metric.
class BiInvMetricGroup {
  public:
    BiInvMetricGroup(FiniteGroup group, std::vector<std::vector<Rat>> dist);

    const FiniteGroup& group() const { return group_; }
    const Rat& d(int a, int b) const { return dist_[a][b]; }
    const std::vector<std::vector<Rat>>& dist() const { return dist_; }
    int size() const { return group_.size(); }
    Rat diameter() const;
    // Minimum distance from the identity to a nontrivial element of the set.
    Rat gap(const std::vector<int>& subgroup_elems) const;

    BiInvMetricGroup scaled(const Rat& factor) const;

    // First violating (g, k1, k2, h) of delta(g k1 h, g k2 h) == delta(k1, k2).
    static std::optional<std::array<int, 4>> check_biinvariance(
        const FiniteGroup& group, const std::vector<std::vector<Rat>>& dist);

  private:
    FiniteGroup group_;
    std::vector<std::vector<Rat>> dist_;
};

// A subgroup of K acting on Z: element indices into K plus one permutation
// of Z per element (aligned lists; elements[0] must be the identity of K).
struct SubgroupAction {
    std::vector<int> elements;
    std::vector<Perm> perms;

    void validate(const FiniteGroup& k, const FinMetric& z) const;
    bool faithful() const;
    int index_of(int k_elem) const;
};

struct ScaleResult {
    BiInvMetricGroup k;
    Rat factor;         // power of 2 applied
    bool was_trivial;   // gamma trivial: condition vacuous, returned unchanged
};

// Smallest power-of-2 scaling making min_{gamma != 1} delta(1, gamma) > diam Z.
ScaleResult scale_for_induction(const BiInvMetricGroup& k,
                                const std::vector<int>& gamma_elems,
                                const FinMetric& z);

// Product K x Z with the max metric.
FinMetric product_metric(const BiInvMetricGroup& k, const FinMetric& z);

struct InduceResult {
    FinMetric y;
    IsoAction beta;             // K acting on Y
    std::vector<int> embed;     // e : Z -> Y (point indices)
    std::vector<int> orbit_rep; // canonical (k, z) pair index per Y point
};

// Metric induction: Y = (K x Z)/Gamma with the min-over-orbit metric,
// left K-action, and the isometric Gamma-equivariant embedding of Z.
InduceResult induce(const BiInvMetricGroup& k, const SubgroupAction& gamma,
                    const FinMetric& z);

struct IsoGroupResult {
    FiniteGroup group;
    std::vector<Perm> perms;
};

// Full isometry group by exhaustive permutation filtering.
IsoGroupResult iso_group(const FinMetric& x, int cap = 8);

}  // namespace egw
