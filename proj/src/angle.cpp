#include "egw/angle.hpp"

#include <algorithm>

namespace egw {

Rat angle_dist(const Angle& a, const Angle& b) {
    Rat diff = a.value() - b.value();
    if (diff < 0)
        diff = -diff;
    Rat wrap = 1 - diff;
    return diff < wrap ? diff : wrap;
}

Rat torus_dist_max(const TorusPoint& x, const TorusPoint& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("torus_dist_max: arity mismatch");
    Rat best(0);
    for (size_t i = 0; i < x.size(); ++i)
        best = std::max(best, angle_dist(x[i], y[i]));
    return best;
}

std::vector<Angle> kth_roots(const Angle& a, const Int& k) {
    if (k < 1)
        throw std::invalid_argument("kth_roots: k must be positive");
    std::vector<Angle> roots;
    Rat base = a.value() / Rat(k);
    Rat step = Rat(1) / Rat(k);
    for (Int j = 0; j < k; ++j)
        roots.push_back(Angle(base + Rat(j) * step));
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace egw
