#pragma once

#include <vector>

#include "egw/abgroup.hpp"
#include "egw/angle.hpp"
#include "egw/metspace.hpp"
#include "egw/rational.hpp"

namespace egw {

// Circle-valued map constant on the 2^level dyadic intervals.
struct StepMap {
    int level = 0;
    std::vector<Angle> values;  // exactly 1 << level entries
};

void validate_step(const StepMap& f);

// Duplicate each value 2^(m - level) times; isometric for step_dist.
StepMap refine(const StepMap& f, int m);

// Average metric 2^-n sum of pointwise circle distances; maps at different
// levels are refined to the common one first.
Rat step_dist(const StepMap& f, const StepMap& g);

StepMap step_mul(const StepMap& f, const StepMap& g);

// Maps from the 2^level dyadic intervals into a finite metric group, with
// pointwise operations and the average metric.
class StepGroup {
  public:
    using Elem = std::vector<int>;

    StepGroup(int level, BiInvMetricGroup k);

    int level() const { return level_; }
    int slots() const { return 1 << level_; }
    const BiInvMetricGroup& value_group() const { return k_; }

    Elem identity() const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Rat dist(const Elem& a, const Elem& b) const;
    // The same map one level deeper (values duplicated).
    Elem refined(const Elem& a, int m) const;

    Int size() const;
    // All elements in odometer order; throws std::length_error beyond cap.
    std::vector<Elem> enumerate(long cap = 1000000) const;

  private:
    int level_;
    BiInvMetricGroup k_;
};

// Slotwise evaluation of characters of an abelian group.
struct StepHom {
    int level = 0;
    std::vector<Character> chars;  // one per slot

    StepMap eval(const AbGroup& g, const std::vector<Int>& elem) const;
};

// Validates each character and packages them as a homomorphism into the
// level-n step group over the circle.
StepHom hom_from_characters(const AbGroup& g, int level, std::vector<Character> chars);

struct SurjHom {
    StepHom hom;
    Int h_order;     // order of the cyclic target H
    Int image_size;  // verified equal to h_order^(2^level)
};

// Homomorphism onto H^(2^level), H the canonical cyclic subgroup attached
// to g (which must satisfy the cofinal-omega condition). Each slot uses its
// own fresh generators from the omega blocks of top order, so truncations
// must supply at least 2^level generators per such block. Surjectivity is
// verified by exact image enumeration.
SurjHom surjective_hom(const AbGroup& g, int level, long enum_cap = 3000000);

struct DensityReport {
    Rat radius;
    StepGroup::Elem witness;  // a farthest element of the step group
};

// Exact covering radius of the subgroup generated by gens inside the full
// step group.
DensityReport density_report(const StepGroup& sg, const std::vector<StepGroup::Elem>& gens,
                             long cap = 1000000);

}  // namespace egw
