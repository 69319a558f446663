#include "egw/metspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace egw {

std::optional<MetricViolation> FinMetric::check(const std::vector<std::vector<Rat>>& dist) {
    int n = static_cast<int>(dist.size());
    for (const auto& row : dist)
        if (static_cast<int>(row.size()) != n)
            return MetricViolation{"shape", {}, "distance matrix not square"};
    for (int i = 0; i < n; ++i) {
        if (dist[i][i] != 0)
            return MetricViolation{"diagonal", {i}, "nonzero self-distance"};
        for (int j = 0; j < n; ++j) {
            if (dist[i][j] != dist[j][i])
                return MetricViolation{"symmetry", {i, j}, "asymmetric distance"};
            if (i != j && dist[i][j] <= 0)
                return MetricViolation{"positivity", {i, j}, "non-positive distance between distinct points"};
        }
    }
    // Triangle pass. When every entry fits a machine integer over a common
    // denominator the cubic loop runs on longs; otherwise on rationals.
    Int cdz = 1;
    bool scalable = true;
    for (int i = 0; i < n && scalable; ++i)
        for (int j = i + 1; j < n; ++j) {
            cdz = lcm(cdz, Int(dist[i][j].get_den()));
            if (!cdz.fits_slong_p() || cdz.get_si() > 1000000) {
                scalable = false;
                break;
            }
        }
    if (scalable) {
        std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
        for (int i = 0; i < n && scalable; ++i)
            for (int j = 0; j < n; ++j) {
                Int v = Int(dist[i][j].get_num() * (cdz / dist[i][j].get_den()));
                if (!v.fits_slong_p() || v.get_si() > (1L << 60)) {
                    scalable = false;
                    break;
                }
                m[i][j] = v.get_si();
            }
        if (scalable) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        if (m[i][k] > m[i][j] + m[j][k])
                            return MetricViolation{"triangle", {i, j, k},
                                                   "triangle inequality fails"};
            return std::nullopt;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (dist[i][k] > dist[i][j] + dist[j][k])
                    return MetricViolation{"triangle", {i, j, k}, "triangle inequality fails"};
    return std::nullopt;
}

FinMetric::FinMetric(std::vector<std::string> labels, std::vector<std::vector<Rat>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
    if (labels_.size() != dist_.size())
        throw std::invalid_argument("FinMetric: label count mismatch");
    if (labels_.empty())
        throw std::invalid_argument("FinMetric: empty space");
    if (auto v = check(dist_))
        throw std::invalid_argument("FinMetric: " + v->kind + " violation: " + v->message);
}

Rat FinMetric::diameter() const {
    Rat m(0);
    for (const auto& row : dist_)
        for (const auto& d : row)
            m = std::max(m, d);
    return m;
}

void IsoAction::validate(const FinMetric& space) const {
    if (static_cast<int>(perms.size()) != group.size())
        throw std::invalid_argument("IsoAction: permutation count mismatch");
    int n = space.size();
    for (const Perm& p : perms) {
        if (static_cast<int>(p.size()) != n || !is_permutation(p))
            throw std::invalid_argument("IsoAction: not a permutation of the space");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (space.d(p[i], p[j]) != space.d(i, j))
                    throw std::invalid_argument("IsoAction: permutation does not preserve distances");
    }
    if (perms[group.identity()] != perm_identity(n))
        throw std::invalid_argument("IsoAction: identity acts nontrivially");
    for (int a = 0; a < group.size(); ++a)
        for (int b = 0; b < group.size(); ++b)
            if (perm_compose(perms[a], perms[b]) != perms[group.mul(a, b)])
                throw std::invalid_argument("IsoAction: not a homomorphism");
}

bool IsoAction::faithful() const {
    for (int a = 1; a < group.size(); ++a)
        if (perms[a] == perm_identity(perms[a].size()))
            return false;
    return true;
}

BiInvMetricGroup::BiInvMetricGroup(FiniteGroup group, std::vector<std::vector<Rat>> dist)
    : group_(std::move(group)), dist_(std::move(dist)) {
    if (auto v = FinMetric::check(dist_))
        throw std::invalid_argument("BiInvMetricGroup: " + v->kind + " violation");
    if (static_cast<int>(dist_.size()) != group_.size())
        throw std::invalid_argument("BiInvMetricGroup: size mismatch");
    if (auto w = check_biinvariance(group_, dist_))
        throw std::invalid_argument("BiInvMetricGroup: metric not bi-invariant");
}

std::optional<std::array<int, 4>> BiInvMetricGroup::check_biinvariance(
    const FiniteGroup& group, const std::vector<std::vector<Rat>>& dist) {
    // Bi-invariance is left invariance plus right invariance, so two cubic
    // scans replace the quartic one.
    int n = group.size();
    int e = group.identity();
    for (int g = 0; g < n; ++g)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                if (dist[group.mul(g, k1)][group.mul(g, k2)] != dist[k1][k2])
                    return std::array<int, 4>{g, k1, k2, e};
    for (int h = 0; h < n; ++h)
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                if (dist[group.mul(k1, h)][group.mul(k2, h)] != dist[k1][k2])
                    return std::array<int, 4>{e, k1, k2, h};
    return std::nullopt;
}

Rat BiInvMetricGroup::diameter() const {
    Rat m(0);
    for (const auto& row : dist_)
        for (const auto& d : row)
            m = std::max(m, d);
    return m;
}

Rat BiInvMetricGroup::gap(const std::vector<int>& subgroup_elems) const {
    Rat g(0);
    bool first = true;
    for (int e : subgroup_elems) {
        if (e == group_.identity())
            continue;
        if (first || dist_[group_.identity()][e] < g) {
            g = dist_[group_.identity()][e];
            first = false;
        }
    }
    return first ? Rat(0) : g;  // 0 means "no nontrivial element"
}

BiInvMetricGroup BiInvMetricGroup::scaled(const Rat& factor) const {
    auto d = dist_;
    for (auto& row : d)
        for (auto& x : row)
            x *= factor;
    return BiInvMetricGroup(group_, std::move(d));
}

void SubgroupAction::validate(const FiniteGroup& k, const FinMetric& z) const {
    if (elements.empty() || elements[0] != k.identity())
        throw std::invalid_argument("SubgroupAction: elements must start with the identity");
    if (elements.size() != perms.size())
        throw std::invalid_argument("SubgroupAction: perm count mismatch");
    std::map<int, size_t> pos;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] < 0 || elements[i] >= k.size())
            throw std::invalid_argument("SubgroupAction: element outside group");
        if (!pos.emplace(elements[i], i).second)
            throw std::invalid_argument("SubgroupAction: duplicate element");
    }
    // Subgroup closure and homomorphism in one pass.
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = 0; j < elements.size(); ++j) {
            int prod = k.mul(elements[i], elements[j]);
            auto it = pos.find(prod);
            if (it == pos.end())
                throw std::invalid_argument("SubgroupAction: element set not closed under multiplication");
            if (perm_compose(perms[i], perms[j]) != perms[it->second])
                throw std::invalid_argument("SubgroupAction: not a homomorphism");
        }
    for (const Perm& p : perms) {
        if (static_cast<int>(p.size()) != z.size() || !is_permutation(p))
            throw std::invalid_argument("SubgroupAction: not a permutation of Z");
        for (int a = 0; a < z.size(); ++a)
            for (int b = 0; b < z.size(); ++b)
                if (z.d(p[a], p[b]) != z.d(a, b))
                    throw std::invalid_argument("SubgroupAction: action not isometric");
    }
}

bool SubgroupAction::faithful() const {
    for (size_t i = 1; i < perms.size(); ++i)
        if (perms[i] == perm_identity(perms[i].size()))
            return false;
    return true;
}

int SubgroupAction::index_of(int k_elem) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == k_elem)
            return static_cast<int>(i);
    return -1;
}

ScaleResult scale_for_induction(const BiInvMetricGroup& k,
                                const std::vector<int>& gamma_elems,
                                const FinMetric& z) {
    Rat gap = k.gap(gamma_elems);
    if (gap == 0)
        return ScaleResult{k, Rat(1), true};
    Rat diam = z.diameter();
    Rat factor(1);
    while (!(gap * factor > diam))
        factor *= 2;
    if (factor == 1)
        return ScaleResult{k, factor, false};
    return ScaleResult{k.scaled(factor), factor, false};
}

FinMetric product_metric(const BiInvMetricGroup& k, const FinMetric& z) {
    int nk = k.size(), nz = z.size();
    std::vector<std::string> labels;
    labels.reserve(nk * nz);
    for (int a = 0; a < nk; ++a)
        for (int i = 0; i < nz; ++i)
            labels.push_back("(" + k.group().label(a) + "," + z.label(i) + ")");
    std::vector<std::vector<Rat>> d(nk * nz, std::vector<Rat>(nk * nz));
    for (int a = 0; a < nk; ++a)
        for (int i = 0; i < nz; ++i)
            for (int b = 0; b < nk; ++b)
                for (int j = 0; j < nz; ++j)
                    d[a * nz + i][b * nz + j] = std::max(k.d(a, b), z.d(i, j));
    return FinMetric(std::move(labels), std::move(d));
}

InduceResult induce(const BiInvMetricGroup& k, const SubgroupAction& gamma,
                    const FinMetric& z) {
    gamma.validate(k.group(), z);
    if (!gamma.faithful())
        throw std::invalid_argument("induce: action of Gamma on Z is not faithful");
    bool gamma_trivial = gamma.elements.size() == 1;
    if (!gamma_trivial && !(k.gap(gamma.elements) > z.diameter()))
        throw std::invalid_argument(
            "induce: gap condition fails (min delta(1,gamma) must exceed diam Z); "
            "apply scale_for_induction first");

    int nz = z.size();
    int nx = k.size() * nz;
    auto xk = [nz](int x) { return x / nz; };
    auto xz = [nz](int x) { return x % nz; };
    auto dx = [&](int x1, int x2) {
        return std::max(k.d(xk(x1), xk(x2)), z.d(xz(x1), xz(x2)));
    };
    // Right action (k, z) . gamma = (k gamma, gamma^{-1} z).
    auto act_right = [&](int x, size_t gi) {
        int ke = k.group().mul(xk(x), gamma.elements[gi]);
        int gi_inv = gamma.index_of(k.group().inv(gamma.elements[gi]));
        return ke * nz + gamma.perms[gi_inv][xz(x)];
    };

    std::vector<int> orbit_of(nx, -1);
    std::vector<int> reps;
    for (int x = 0; x < nx; ++x) {
        if (orbit_of[x] >= 0)
            continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);  // x is minimal in its orbit by scan order
        for (size_t gi = 0; gi < gamma.elements.size(); ++gi)
            orbit_of[act_right(x, gi)] = id;
    }
    int ny = static_cast<int>(reps.size());

    std::vector<std::vector<Rat>> dy(ny, std::vector<Rat>(ny));
    for (int a = 0; a < ny; ++a)
        for (int b = a; b < ny; ++b) {
            Rat best = dx(reps[a], reps[b]);
            for (size_t gi = 0; gi < gamma.elements.size(); ++gi)
                best = std::min(best, dx(reps[a], act_right(reps[b], gi)));
            dy[a][b] = best;
            dy[b][a] = best;
        }
    std::vector<std::string> labels;
    labels.reserve(ny);
    for (int a = 0; a < ny; ++a)
        labels.push_back("[" + k.group().label(xk(reps[a])) + "," + z.label(xz(reps[a])) + "]");
    FinMetric y(std::move(labels), std::move(dy));

    // Left action of K.
    IsoAction beta;
    beta.group = k.group();
    beta.perms.resize(k.size());
    for (int g = 0; g < k.size(); ++g) {
        Perm p(ny);
        for (int a = 0; a < ny; ++a)
            p[a] = orbit_of[k.group().mul(g, xk(reps[a])) * nz + xz(reps[a])];
        beta.perms[g] = std::move(p);
    }
    beta.validate(y);
    if (!beta.faithful())
        throw std::logic_error("induce postcondition: induced K-action not faithful");

    std::vector<int> embed(nz);
    for (int i = 0; i < nz; ++i)
        embed[i] = orbit_of[k.group().identity() * nz + i];
    for (int i = 0; i < nz; ++i)
        for (int j = 0; j < nz; ++j)
            if (y.d(embed[i], embed[j]) != z.d(i, j))
                throw std::logic_error("induce postcondition: embedding not isometric");
    for (size_t gi = 0; gi < gamma.elements.size(); ++gi)
        for (int i = 0; i < nz; ++i)
            if (embed[gamma.perms[gi][i]] != beta.perms[gamma.elements[gi]][embed[i]])
                throw std::logic_error("induce postcondition: embedding not equivariant");

    return InduceResult{std::move(y), std::move(beta), std::move(embed), std::move(reps)};
}

IsoGroupResult iso_group(const FinMetric& x, int cap) {
    int n = x.size();
    if (n > cap)
        throw std::invalid_argument("iso_group: size cap exceeded");
    std::vector<Perm> found;
    Perm p = perm_identity(n);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (x.d(p[i], p[j]) != x.d(i, j))
                    ok = false;
        if (ok)
            found.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    int m = static_cast<int>(found.size());
    std::map<Perm, int> index;
    for (int i = 0; i < m; ++i)
        index[found[i]] = i;
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto it = index.find(perm_compose(found[i], found[j]));
            if (it == index.end())
                throw std::logic_error("iso_group: isometries not closed under composition");
            table[i][j] = it->second;
        }
    return IsoGroupResult{FiniteGroup(std::move(table)), std::move(found)};
}

}  // namespace egw
