#include "egw/katetov.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace egw {

namespace {

void check_shape(const FinMetric& x, const KatetovFn& f) {
    if (f.support.empty())
        throw std::invalid_argument("katetov function needs a non-empty support");
    if (f.support.size() != f.values.size())
        throw std::invalid_argument("katetov support/values size mismatch");
    for (size_t i = 0; i < f.support.size(); ++i) {
        if (f.support[i] < 0 || f.support[i] >= x.size())
            throw std::invalid_argument("katetov support index out of range");
        if (i > 0 && f.support[i] <= f.support[i - 1])
            throw std::invalid_argument("katetov support must be strictly increasing");
        if (f.values[i] < 0)
            throw std::invalid_argument("katetov value must be non-negative");
    }
}

std::string point_name(const std::vector<std::string>& taken, const KatetovFn& f, int round) {
    std::string key = std::to_string(round);
    for (size_t i = 0; i < f.support.size(); ++i)
        key += "," + std::to_string(f.support[i]) + ":" + rat_str(f.values[i]);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "w%08lx",
                  static_cast<unsigned long>(std::hash<std::string>{}(key) & 0xffffffffull));
    std::string label = buf;
    while (std::find(taken.begin(), taken.end(), label) != taken.end())
        label += "x";
    return label;
}

Rat hat_value(const std::vector<std::vector<Rat>>& dist, const KatetovFn& f, int y,
              const std::optional<Rat>& cap) {
    std::optional<Rat> best;
    for (size_t i = 0; i < f.support.size(); ++i) {
        if (f.support[i] == y)
            return f.values[i];
        Rat v = f.values[i] + dist[f.support[i]][y];
        if (!best || v < *best)
            best = v;
    }
    if (cap && *cap < *best)
        return *cap;
    return *best;
}

// Appends the point realizing f; no revalidation of the whole matrix.
int append_point(std::vector<std::string>& labels, std::vector<std::vector<Rat>>& dist,
                 const KatetovFn& f, const std::optional<Rat>& cap,
                 const std::string& label) {
    int n = static_cast<int>(labels.size());
    std::vector<Rat> row(n + 1, Rat(0));
    for (int y = 0; y < n; ++y)
        row[y] = hat_value(dist, f, y, cap);
    for (int y = 0; y < n; ++y)
        dist[y].push_back(row[y]);
    dist.push_back(std::move(row));
    labels.push_back(label);
    return n;
}

}  // namespace

std::optional<std::pair<int, int>> katetov_violation(const FinMetric& x, const KatetovFn& f) {
    check_shape(x, f);
    for (size_t i = 0; i < f.support.size(); ++i)
        for (size_t j = 0; j < f.support.size(); ++j) {
            const Rat& d = x.d(f.support[i], f.support[j]);
            if (abs(Rat(f.values[i] - f.values[j])) > d || d > f.values[i] + f.values[j])
                return std::make_pair(f.support[i], f.support[j]);
        }
    return std::nullopt;
}

Rat katetov_hat(const FinMetric& x, const KatetovFn& f, int y, const std::optional<Rat>& cap) {
    check_shape(x, f);
    if (y < 0 || y >= x.size())
        throw std::invalid_argument("point index out of range");
    return hat_value(x.dist(), f, y, cap);
}

FinMetric one_point_extension(const FinMetric& x, const KatetovFn& f,
                              const std::string& label, const std::optional<Rat>& cap) {
    if (auto v = katetov_violation(x, f))
        throw std::invalid_argument("invalid katetov pair (" + x.label(v->first) + ", " +
                                    x.label(v->second) + ")");
    for (const Rat& v : f.values)
        if (v == 0)
            throw std::invalid_argument("zero value: function is realized by a support point");
    if (cap) {
        if (x.diameter() > *cap)
            throw std::invalid_argument("cap below the diameter of the space");
        for (const Rat& v : f.values)
            if (v > *cap)
                throw std::invalid_argument("katetov value above the cap");
    }
    std::vector<std::string> labels = x.labels();
    std::vector<std::vector<Rat>> dist = x.dist();
    append_point(labels, dist, f, cap, label.empty() ? point_name(labels, f, 0) : label);
    return FinMetric(std::move(labels), std::move(dist));
}

ActionExtension extend_action(const FinMetric& x, const IsoAction& alpha, const KatetovFn& f) {
    alpha.validate(x);
    if (auto v = katetov_violation(x, f))
        throw std::invalid_argument("invalid katetov pair (" + x.label(v->first) + ", " +
                                    x.label(v->second) + ")");
    for (const Rat& v : f.values)
        if (v == 0)
            throw std::invalid_argument("zero value: function is realized by a support point");

    auto translate = [&](const KatetovFn& h, const Perm& g) {
        std::vector<std::pair<int, Rat>> pairs;
        for (size_t i = 0; i < h.support.size(); ++i)
            pairs.emplace_back(g[h.support[i]], h.values[i]);
        std::sort(pairs.begin(), pairs.end());
        KatetovFn out;
        for (auto& [s, v] : pairs) {
            out.support.push_back(s);
            out.values.push_back(v);
        }
        return out;
    };

    std::set<KatetovFn> orbit;
    for (const Perm& g : alpha.perms)
        orbit.insert(translate(f, g));

    std::vector<std::string> labels = x.labels();
    std::vector<std::vector<Rat>> dist = x.dist();
    std::map<KatetovFn, int> where;
    for (const KatetovFn& h : orbit)
        where[h] = append_point(labels, dist, h, std::nullopt, point_name(labels, h, 0));

    FinMetric space(std::move(labels), std::move(dist));
    IsoAction ext;
    ext.group = alpha.group;
    for (const Perm& g : alpha.perms) {
        Perm p(space.size());
        for (int i = 0; i < x.size(); ++i)
            p[i] = g[i];
        for (const KatetovFn& h : orbit)
            p[where[h]] = where.at(translate(h, g));
        ext.perms.push_back(std::move(p));
    }
    ext.validate(space);
    if (ext.perms.size() != alpha.perms.size())
        throw std::logic_error("orbit extension lost group elements");
    return ActionExtension{std::move(space), std::move(ext), static_cast<int>(orbit.size())};
}

std::vector<Rat> value_grid(long den_max, const Rat& value_max) {
    std::set<Rat> vals;
    for (long den = 1; den <= den_max; ++den)
        for (long num = 1; Rat(num, den) <= value_max; ++num)
            vals.insert(Rat(num, den));
    return {vals.begin(), vals.end()};
}

namespace {

// Scaled-integer view of a growing space: distances times a common
// denominator, so catalogue work runs on machine integers.
struct ScaledSat {
    long cd = 1;
    long cap = 0;
    std::vector<long> grid;       // scaled grid values, sorted
    std::vector<int8_t> val2idx;  // scaled value -> position in grid, -1 off-grid
    std::vector<std::vector<long>> m;
    // Realized-type tracking: singles per (point, grid value); pairs as a
    // bitmask over grid-index pairs when the grid is small enough.
    std::vector<std::vector<char>> seen1;
    std::vector<std::vector<uint64_t>> seen2;
    bool pair_bits = false;

    int size() const { return static_cast<int>(m.size()); }

    int gidx(long v) const {
        return (v >= 0 && v <= cap) ? val2idx[static_cast<size_t>(v)] : -1;
    }

    // Record w as a realizing witness for every single and pair not
    // containing w.
    void note_point(int w) {
        int g = static_cast<int>(grid.size());
        int n = size();
        for (int i = 0; i < n; ++i) {
            if (i == w)
                continue;
            int iv = gidx(m[i][w]);
            if (iv < 0)
                continue;
            seen1[i][iv] = 1;
            if (!pair_bits)
                continue;
            for (int j = 0; j < n; ++j) {
                if (j == i || j == w)
                    continue;
                int jv = gidx(m[j][w]);
                if (jv >= 0)
                    seen2[i][j] |= uint64_t(1) << (iv * g + jv);
            }
        }
    }

    void init(const FinMetric& x, const SaturateParams& params) {
        Int cdz = 1;
        for (long d = 1; d <= params.den_max; ++d)
            cdz = lcm(cdz, Int(d));
        cdz = lcm(cdz, Int(params.value_max.get_den()));
        for (int i = 0; i < x.size(); ++i)
            for (int j = i + 1; j < x.size(); ++j)
                cdz = lcm(cdz, Int(x.d(i, j).get_den()));
        if (!cdz.fits_slong_p() || cdz.get_si() > 1000000)
            throw std::invalid_argument("distance denominators too large to saturate");
        cd = cdz.get_si();
        cap = static_cast<long>(Rat(params.value_max * cd).get_num().get_si());
        if (cap > 5000000)
            throw std::invalid_argument("value bound too large to saturate");
        for (const Rat& v : value_grid(params.den_max, params.value_max))
            grid.push_back(static_cast<long>(Rat(v * cd).get_num().get_si()));
        if (grid.size() > 127)
            throw std::invalid_argument("value grid too large to saturate");
        val2idx.assign(cap + 1, -1);
        for (size_t i = 0; i < grid.size(); ++i)
            val2idx[static_cast<size_t>(grid[i])] = static_cast<int8_t>(i);
        pair_bits = grid.size() * grid.size() <= 64;

        int n = x.size();
        m.assign(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[i][j] = static_cast<long>(Rat(x.d(i, j) * cd).get_num().get_si());
        seen1.assign(n, std::vector<char>(grid.size(), 0));
        if (pair_bits)
            seen2.assign(n, std::vector<uint64_t>(n, 0));
        for (int w = 0; w < n; ++w)
            note_point(w);
    }

    bool realized(const std::vector<int>& support, const std::vector<long>& values) const {
        int k = static_cast<int>(support.size());
        if (k == 1)
            return seen1[support[0]][gidx(values[0])] != 0;
        if (k == 2 && pair_bits) {
            int g = static_cast<int>(grid.size());
            uint64_t bit = uint64_t(1) << (gidx(values[0]) * g + gidx(values[1]));
            return (seen2[support[0]][support[1]] & bit) != 0;
        }
        for (int w = 0; w < size(); ++w) {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i)
                ok = w != support[i] && m[w][support[i]] == values[i];
            if (ok)
                return true;
        }
        return false;
    }

    // Full-support witness row: the prescribed values on the support;
    // elsewhere, among the admissible grid values, the one whose choice
    // covers the most still-unrealized types (ties broken by the seeded
    // generator). Falls back to the canonical upper bound if the interval
    // misses the grid.
    std::vector<long> witness_row(const std::vector<int>& support,
                                  const std::vector<long>& values,
                                  std::mt19937_64& rng) const {
        int g = static_cast<int>(grid.size());
        int n = size();
        std::vector<long> row(n, -1);
        for (size_t i = 0; i < support.size(); ++i)
            row[support[i]] = values[i];
        std::vector<long> score(grid.size());
        for (int y = 0; y < n; ++y) {
            if (row[y] >= 0)
                continue;
            long lo = 0, hi = cap;
            for (int z = 0; z < n; ++z) {
                if (row[z] < 0)
                    continue;
                lo = std::max(lo, std::labs(row[z] - m[z][y]));
                hi = std::min(hi, row[z] + m[z][y]);
            }
            auto a = std::lower_bound(grid.begin(), grid.end(), std::max(lo, grid.front()));
            auto b = std::upper_bound(grid.begin(), grid.end(), hi);
            if (a >= b) {
                row[y] = std::min(hi, cap);  // in [lo, hi] by the Katetov bounds
                continue;
            }
            int ca = static_cast<int>(a - grid.begin());
            int cb = static_cast<int>(b - grid.begin());
            for (int vi = ca; vi < cb; ++vi)
                score[vi] = seen1[y][vi] ? 0 : 1;
            if (pair_bits)
                for (int z = 0; z < n; ++z) {
                    if (row[z] < 0 || z == y)
                        continue;
                    int zi = gidx(row[z]);
                    if (zi < 0)
                        continue;
                    uint64_t sb = seen2[y][z];
                    for (int vi = ca; vi < cb; ++vi)
                        if (!(sb >> (vi * g + zi) & 1))
                            ++score[vi];
                }
            long best = -1, best_score = -1;
            uint64_t ties = 0;
            for (int vi = ca; vi < cb; ++vi) {
                if (score[vi] > best_score) {
                    best = grid[vi];
                    best_score = score[vi];
                    ties = 1;
                } else if (score[vi] == best_score && rng() % ++ties == 0) {
                    best = grid[vi];
                }
            }
            row[y] = best;
        }
        return row;
    }

    // Record the existing points as witnesses for the singles and pairs
    // that contain the fresh point w.
    void note_pairs_of(int w) {
        int g = static_cast<int>(grid.size());
        int n = size();
        for (int z = 0; z < n; ++z) {
            if (z == w)
                continue;
            int wz = gidx(m[w][z]);
            if (wz < 0)
                continue;
            seen1[w][wz] = 1;
            if (!pair_bits)
                continue;
            for (int j = 0; j < n; ++j) {
                if (j == w || j == z)
                    continue;
                int jz = gidx(m[j][z]);
                if (jz >= 0) {
                    seen2[w][j] |= uint64_t(1) << (wz * g + jz);
                    seen2[j][w] |= uint64_t(1) << (jz * g + wz);
                }
            }
        }
    }

    void append(std::vector<long> row) {
        int n = size();
        row.push_back(0);
        for (int i = 0; i < n; ++i)
            m[i].push_back(row[i]);
        m.push_back(std::move(row));
        seen1.emplace_back(grid.size(), 0);
        if (pair_bits) {
            for (auto& r : seen2)
                r.push_back(0);
            seen2.emplace_back(n + 1, 0);
        }
        note_point(n);
        note_pairs_of(n);
    }

    Rat unscale(long v) const { return Rat(v, cd); }
};

// Lexicographic enumeration of size-k index subsets of [0, n).
template <typename Fn>
void for_subsets(int n, int k, Fn&& fn) {
    if (k > n)
        return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(idx);
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t)
            --t;
        if (t < 0)
            return;
        ++idx[t];
        for (int j = t + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// Scaled grid value tuples satisfying the Katetov bounds on the support.
template <typename Fn>
void for_grid_fns(const ScaledSat& s, const std::vector<int>& support, Fn&& fn) {
    int k = static_cast<int>(support.size());
    if (s.grid.empty())
        return;
    std::vector<size_t> pos(k, 0);
    std::vector<long> values(k, s.grid[0]);
    while (true) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = 0; j < k && ok; ++j) {
                long d = s.m[support[i]][support[j]];
                if (std::labs(values[i] - values[j]) > d || d > values[i] + values[j])
                    ok = false;
            }
        if (ok)
            fn(values);
        int t = 0;
        while (t < k && ++pos[t] == s.grid.size()) {
            pos[t] = 0;
            values[t] = s.grid[0];
            ++t;
        }
        if (t == k)
            break;
        values[t] = s.grid[pos[t]];
    }
}

}  // namespace

SaturateResult saturate(const FinMetric& x, const SaturateParams& params) {
    if (x.size() == 0)
        throw std::invalid_argument("saturate needs a non-empty seed");
    if (x.diameter() > params.value_max)
        throw std::invalid_argument("seed diameter exceeds the value bound");
    ScaledSat s;
    s.init(x, params);
    std::mt19937_64 rng(params.seed);

    std::vector<std::string> labels = x.labels();
    SaturateResult res{x, {}, 0};
    while (true) {
        ++res.rounds;
        int n0 = s.size();
        int added = 0;
        for (int k = 1; k <= params.support_max; ++k) {
            for_subsets(n0, k, [&](const std::vector<int>& support) {
                for_grid_fns(s, support, [&](const std::vector<long>& values) {
                    if (s.realized(support, values))
                        return;
                    if (s.size() >= params.guard_size)
                        throw GuardError("saturation guard exceeded at " +
                                         std::to_string(s.size()) + " points");
                    KatetovFn f;
                    f.support = support;
                    for (long v : values)
                        f.values.push_back(s.unscale(v));
                    std::string name = point_name(labels, f, res.rounds);
                    s.append(s.witness_row(support, values, rng));
                    labels.push_back(name);
                    res.tower.push_back({res.rounds, f, name});
                    ++added;
                });
            });
        }
        if (added == 0)
            break;
    }
    if (res.tower.empty())
        return res;  // the seed was already saturated
    std::vector<std::vector<Rat>> dist(s.size(), std::vector<Rat>(s.size(), Rat(0)));
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j)
            dist[i][j] = s.unscale(s.m[i][j]);
    res.space = FinMetric(std::move(labels), std::move(dist));
    return res;
}

std::optional<KatetovFn> saturation_gap(const FinMetric& x, const SaturateParams& params) {
    if (x.size() == 0)
        return std::nullopt;
    ScaledSat s;
    s.init(x, params);
    std::optional<KatetovFn> gap;
    for (int k = 1; k <= params.support_max && !gap; ++k) {
        for_subsets(x.size(), k, [&](const std::vector<int>& support) {
            if (gap)
                return;
            for_grid_fns(s, support, [&](const std::vector<long>& values) {
                if (gap || s.realized(support, values))
                    return;
                KatetovFn f;
                f.support = support;
                for (long v : values)
                    f.values.push_back(s.unscale(v));
                gap = f;
            });
        });
    }
    return gap;
}

FinMetric capped_hamming_space(int alphabet, int dim, const Rat& unit, int cap_units) {
    if (alphabet < 2 || alphabet > 10 || dim < 1 || cap_units < 1 || unit <= 0)
        throw std::invalid_argument("bad capped hamming space parameters");
    long count = 1;
    for (int i = 0; i < dim; ++i) {
        count *= alphabet;
        if (count > 100000)
            throw std::invalid_argument("capped hamming space too large");
    }
    std::vector<std::string> labels(count);
    std::vector<std::vector<int>> word(count, std::vector<int>(dim, 0));
    for (long v = 0; v < count; ++v) {
        long r = v;
        std::string s;
        for (int i = 0; i < dim; ++i) {
            word[v][i] = static_cast<int>(r % alphabet);
            s += static_cast<char>('0' + word[v][i]);
            r /= alphabet;
        }
        labels[v] = s;
    }
    std::vector<std::vector<Rat>> dist(count, std::vector<Rat>(count, Rat(0)));
    for (long a = 0; a < count; ++a)
        for (long b = a + 1; b < count; ++b) {
            int h = 0;
            for (int i = 0; i < dim; ++i)
                h += word[a][i] != word[b][i];
            Rat d = unit * std::min(h, cap_units);
            dist[a][b] = d;
            dist[b][a] = d;
        }
    return FinMetric(std::move(labels), std::move(dist));
}

IsometryExtension extend_partial_isometry(const FinMetric& x, const PartialMap& p,
                                          int guard_size, const std::optional<Rat>& cap) {
    if (p.domain.size() != p.image.size())
        throw std::invalid_argument("partial map domain/image size mismatch");
    for (size_t i = 0; i < p.domain.size(); ++i) {
        if (p.domain[i] < 0 || p.domain[i] >= x.size() || p.image[i] < 0 ||
            p.image[i] >= x.size())
            throw std::invalid_argument("partial map index out of range");
        for (size_t j = 0; j < i; ++j) {
            if (p.domain[i] == p.domain[j] || p.image[i] == p.image[j])
                throw std::invalid_argument("partial map is not injective");
            if (x.d(p.domain[i], p.domain[j]) != x.d(p.image[i], p.image[j]))
                throw std::invalid_argument(
                    "partial map does not preserve d(" + x.label(p.domain[i]) + ", " +
                    x.label(p.domain[j]) + ")");
        }
    }

    std::vector<std::string> labels = x.labels();
    std::vector<std::vector<Rat>> dist = x.dist();
    std::vector<std::optional<int>> fwd(labels.size()), bwd(labels.size());
    for (size_t i = 0; i < p.domain.size(); ++i) {
        fwd[p.domain[i]] = p.image[i];
        bwd[p.image[i]] = p.domain[i];
    }

    // One back-and-forth step; forth maps the least unmapped point, back
    // finds a preimage for the least point outside the range.
    int step = 0;
    auto place = [&](std::vector<std::optional<int>>& dir,
                     std::vector<std::optional<int>>& inv, int src) -> bool {
        KatetovFn target;
        for (size_t u = 0; u < dir.size(); ++u)
            if (dir[u])
                target.support.push_back(*dir[u]);
        std::sort(target.support.begin(), target.support.end());
        for (int s : target.support)
            target.values.push_back(dist[src][*inv[s]]);
        for (size_t z = 0; z < inv.size(); ++z) {
            if (inv[z])
                continue;
            bool ok = true;
            for (size_t i = 0; i < target.support.size() && ok; ++i)
                ok = dist[z][target.support[i]] == target.values[i];
            if (ok) {
                dir[src] = static_cast<int>(z);
                inv[z] = src;
                return true;
            }
        }
        if (static_cast<int>(labels.size()) >= guard_size)
            return false;
        int z = append_point(labels, dist, target, cap,
                             point_name(labels, target, 1000 + step));
        fwd.emplace_back();
        bwd.emplace_back();
        dir[src] = z;
        inv[z] = src;
        return true;
    };

    while (true) {
        int ux = -1, uy = -1;
        for (size_t i = 0; i < fwd.size() && ux < 0; ++i)
            if (!fwd[i])
                ux = static_cast<int>(i);
        for (size_t i = 0; i < bwd.size() && uy < 0; ++i)
            if (!bwd[i])
                uy = static_cast<int>(i);
        if (ux < 0 && uy < 0)
            break;
        ++step;
        bool ok = (ux >= 0) ? place(fwd, bwd, ux) : place(bwd, fwd, uy);
        if (!ok) {
            IsometryExtension out{FinMetric(labels, dist), {}, false,
                                  "catalogue insufficient: guard of " +
                                      std::to_string(guard_size) +
                                      " points reached before closure"};
            return out;
        }
    }

    FinMetric space(labels, dist);
    Perm map(space.size());
    for (int i = 0; i < space.size(); ++i)
        map[i] = *fwd[i];
    if (!is_permutation(map))
        throw std::logic_error("back-and-forth result is not a bijection");
    for (int i = 0; i < space.size(); ++i)
        for (int j = 0; j < space.size(); ++j)
            if (space.d(map[i], map[j]) != space.d(i, j))
                throw std::logic_error("back-and-forth result is not an isometry");
    for (size_t i = 0; i < p.domain.size(); ++i)
        if (map[p.domain[i]] != p.image[i])
            throw std::logic_error("back-and-forth result does not extend the input");
    return IsometryExtension{std::move(space), std::move(map), true, ""};
}

}  // namespace egw
