#include "egw/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace egw {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table,
                         std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
    validate();
    int n = size();
    if (labels_.empty()) {
        labels_.reserve(n);
        for (int i = 0; i < n; ++i)
            labels_.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("FiniteGroup: label count mismatch");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0)
            throw std::invalid_argument("FiniteGroup: element without inverse");
    }
}

void FiniteGroup::validate() const {
    int n = static_cast<int>(table_.size());
    if (n == 0)
        throw std::invalid_argument("FiniteGroup: empty table");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("FiniteGroup: table not square");
        for (int x : row)
            if (x < 0 || x >= n)
                throw std::invalid_argument("FiniteGroup: entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw std::invalid_argument("FiniteGroup: 0 is not the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("FiniteGroup: not associative");
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1)
        throw std::invalid_argument("cyclic: order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    int na = a.size(), nb = b.size();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    std::vector<std::string> labels(na * nb);
    auto idx = [nb](int x, int y) { return x * nb + y; };
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1) {
            labels[idx(x1, y1)] = "(" + a.label(x1) + "," + b.label(y1) + ")";
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    t[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
        }
    return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::boolean_cube(int k) {
    if (k < 0 || k > 20)
        throw std::invalid_argument("boolean_cube: k out of range");
    int n = 1 << k;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) {
        std::string lab(k, '0');
        for (int i = 0; i < k; ++i)
            if (a & (1 << i))
                lab[i] = '1';
        labels[a] = lab;
        for (int b = 0; b < n; ++b)
            t[a][b] = a ^ b;
    }
    return FiniteGroup(std::move(t), std::move(labels));
}

long FiniteGroup::element_order(int a) const {
    long ord = 1;
    int x = a;
    while (x != 0) {
        x = mul(x, a);
        ++ord;
    }
    return ord;
}

std::vector<int> FiniteGroup::subgroup_closure(const std::vector<int>& gens) const {
    std::set<int> seen{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : gens) {
                int y = mul(x, g);
                if (seen.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<int>(seen.begin(), seen.end());
}

bool FiniteGroup::in_cyclic_closure(int g, int h) const {
    if (g < 0 || g >= size() || h < 0 || h >= size())
        throw std::invalid_argument("in_cyclic_closure: element outside table");
    int x = 0;
    do {
        if (x == h)
            return true;
        x = mul(x, g);
    } while (x != 0);
    return false;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

bool is_permutation(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x])
            return false;
        seen[x] = 1;
    }
    return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("perm_compose: size mismatch");
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        out[i] = a[b[i]];
    return out;
}

Perm perm_inverse(const Perm& p) {
    Perm out(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        out[p[i]] = static_cast<int>(i);
    return out;
}

Perm perm_identity(size_t n) {
    Perm out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

long perm_order(const Perm& p) {
    long ord = 1;
    std::vector<char> done(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (done[i])
            continue;
        long len = 0;
        size_t j = i;
        while (!done[j]) {
            done[j] = 1;
            j = static_cast<size_t>(p[j]);
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

}  // namespace egw
