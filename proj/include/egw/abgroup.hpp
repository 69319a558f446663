#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egw/angle.hpp"
#include "egw/rational.hpp"
#include "egw/snf.hpp"

namespace egw {

// One primary component Z(p^n)^mult; mult == nullopt means infinite
// multiplicity, of which `trunc` generators are materialized.
struct PrimaryBlock {
    Int p;
    int n = 1;
    std::optional<Int> mult;  // nullopt = omega
    int trunc = 1;

    Int order() const;  // p^n
    int materialized() const;
};

// Countable abelian group descriptor with a finite materialization:
// free_rank Z summands followed by the primary blocks' generators.
class AbGroup {
  public:
    AbGroup(int free_rank, std::vector<PrimaryBlock> primary);

    int free_rank() const { return free_rank_; }
    const std::vector<PrimaryBlock>& primary() const { return primary_; }

    bool bounded() const { return free_rank_ == 0; }
    bool is_torsion_materialization() const { return free_rank_ == 0; }

    // Materialized generators, in declaration order.
    int num_generators() const { return static_cast<int>(gen_orders_.size()); }
    // 0 means infinite order.
    const Int& generator_order(int t) const { return gen_orders_[t]; }
    // Index of the primary block a torsion generator belongs to, -1 for free.
    int generator_block(int t) const { return gen_block_[t]; }

    // lcm of torsion orders of the materialized generators (1 if none).
    Int exponent() const;
    // Cardinality of the materialized group; nullopt if free part present.
    std::optional<Int> materialized_size() const;

  private:
    int free_rank_;
    std::vector<PrimaryBlock> primary_;
    std::vector<Int> gen_orders_;
    std::vector<int> gen_block_;
};

// Finite-support coordinate vector over the materialized generators.
using GroupElement = std::vector<Int>;

GroupElement elem_reduce(const AbGroup& g, GroupElement v);
GroupElement elem_add(const AbGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement elem_scale(const AbGroup& g, const GroupElement& a, const Int& k);
bool elem_is_zero(const GroupElement& v);
// Order of the element in the materialized group; 0 = infinite.
Int elem_order(const AbGroup& g, const GroupElement& v);

// Character as a generator -> Angle assignment.
struct Character {
    std::vector<Angle> values;  // one per materialized generator

    Angle eval(const AbGroup& g, const GroupElement& v) const;
};

// Order compatibility: a generator of order q must map to an angle killed by q.
std::optional<std::string> check_character(const AbGroup& g, const Character& chi);

// --- Structure theory ---------------------------------------------------

bool has_star(const AbGroup& g);

// Order of H_Gamma, the subgroup of the circle generated by the roots of
// unity 1/p^n over the blocks of infinite multiplicity.
Int h_gamma_order(const AbGroup& g);

// Witness (p, n) with 0 < m(p^n) < omega and m(p^m) = 0 for m > n, when
// property (*) fails; nullopt when it holds.
std::optional<std::pair<Int, int>> discon_obstruction(const AbGroup& g);

// --- Subgroup queries (Smith form over [gens | relation lattice]) -------

class Subgroup {
  public:
    Subgroup(const AbGroup& g, std::vector<GroupElement> gens);

    const std::vector<GroupElement>& gens() const { return gens_; }

    bool contains(const GroupElement& v) const;
    // Coefficients x with sum x_j gens_j == v in the group; nullopt outside.
    std::optional<std::vector<Int>> express(const GroupElement& v) const;
    // Least k >= 1 with k*v in the subgroup; 0 when no such k exists.
    Int least_multiple_inside(const GroupElement& v) const;
    // Z-kernel basis of [gens | lattice]: relations among the generators.
    const std::vector<std::vector<Int>>& kernel_basis() const { return kernel_; }

    // Enumerate all subgroup elements (torsion groups only, guarded).
    std::vector<GroupElement> enumerate(size_t cap) const;

  private:
    const AbGroup& g_;
    std::vector<GroupElement> gens_;
    SmithForm sf_;
    std::vector<std::vector<Int>> kernel_;
};

// Character of a subgroup: one angle per subgroup generator.
// Checked for well-definedness against the generators' relations.
struct SubCharacter {
    std::vector<Angle> values;
};

std::optional<std::string> check_sub_character(const Subgroup& d, const SubCharacter& theta);
Angle eval_sub_character(const Subgroup& d, const SubCharacter& theta, const GroupElement& v);

// --- Constructive density procedures ------------------------------------

// Extend a character of a subgroup to the whole materialized group.
// Generators are adjoined in order; each new value solves k*c = theta(g^k)
// with the smallest admissible representative.
Character extend_character(const AbGroup& g, const Subgroup& delta, const SubCharacter& theta);

struct DenseTupleResult {
    std::vector<Character> chars;
    GroupElement gamma0;
};

// Density step for torsion groups: characters restricting to
// theta on F whose common evaluation at some gamma0 lands within eps of b.
DenseTupleResult dense_tuple_step(const AbGroup& g, const Subgroup& f,
                                  const std::vector<SubCharacter>& theta,
                                  const TorusPoint& b, const Rat& eps,
                                  size_t search_cap = 1 << 20);

struct HitTargetResult {
    std::vector<Character> chars;
    GroupElement gamma;
};

// Bounded case with property (*): characters restricting to psi on delta
// and hitting x in H_Gamma^n exactly at a fresh gamma.
HitTargetResult hit_target_bounded(const AbGroup& g, const Subgroup& delta,
                                   const std::vector<SubCharacter>& psi,
                                   const TorusPoint& x);

// Exact covering radius (max metric) of the finite subgroup of the torus
// generated by the given points.
Rat covering_radius_torus(const std::vector<TorusPoint>& gens, size_t cap = 2000000);

}  // namespace egw
