#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace egw {

// Finite group by multiplication table. Elements are 0..size-1, identity 0.
class FiniteGroup {
  public:
    FiniteGroup() = default;
    explicit FiniteGroup(std::vector<std::vector<int>> table,
                         std::vector<std::string> labels = {});

    static FiniteGroup cyclic(int n);
    static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
    // (Z/2)^k with bit-vector labels.
    static FiniteGroup boolean_cube(int k);

    int size() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return 0; }
    long element_order(int a) const;
    const std::string& label(int a) const { return labels_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    // Closure of a generating set.
    std::vector<int> subgroup_closure(const std::vector<int>& gens) const;

    // True iff h is a power of g.
    bool in_cyclic_closure(int g, int h) const;

    bool is_abelian() const;

  private:
    void validate() const;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
};

// A permutation as image vector; composition and checks.
using Perm = std::vector<int>;

bool is_permutation(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a[b[x]]
Perm perm_inverse(const Perm& p);
Perm perm_identity(size_t n);
long perm_order(const Perm& p);

}  // namespace egw
