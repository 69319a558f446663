#include "egw/abgroup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace egw {

namespace {

Int int_pow(const Int& base, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

Int lcm_int(const Int& a, const Int& b) {
    Int g = gcd(a, b);
    return a / g * b;
}

}  // namespace

Int PrimaryBlock::order() const {
    return int_pow(p, n);
}

int PrimaryBlock::materialized() const {
    if (!mult)
        return trunc;
    if (*mult > 10000)
        throw std::invalid_argument("PrimaryBlock: finite multiplicity too large to materialize");
    return static_cast<int>(mult->get_si());
}

AbGroup::AbGroup(int free_rank, std::vector<PrimaryBlock> primary)
    : free_rank_(free_rank), primary_(std::move(primary)) {
    if (free_rank_ < 0)
        throw std::invalid_argument("AbGroup: negative free rank");
    std::set<std::pair<Int, int>> seen;
    for (const auto& b : primary_) {
        if (b.p < 2 || mpz_probab_prime_p(b.p.get_mpz_t(), 32) == 0)
            throw std::invalid_argument("AbGroup: p must be prime");
        if (b.n < 1)
            throw std::invalid_argument("AbGroup: exponent must be positive");
        if (b.mult && *b.mult < 1)
            throw std::invalid_argument("AbGroup: multiplicity must be positive");
        if (!b.mult && b.trunc < 1)
            throw std::invalid_argument("AbGroup: omega block needs truncation >= 1");
        if (!seen.insert({b.p, b.n}).second)
            throw std::invalid_argument("AbGroup: duplicate (p, n) block");
    }
    for (int i = 0; i < free_rank_; ++i) {
        gen_orders_.push_back(0);
        gen_block_.push_back(-1);
    }
    for (size_t bi = 0; bi < primary_.size(); ++bi) {
        Int q = primary_[bi].order();
        int cnt = primary_[bi].materialized();
        for (int i = 0; i < cnt; ++i) {
            gen_orders_.push_back(q);
            gen_block_.push_back(static_cast<int>(bi));
        }
    }
}

Int AbGroup::exponent() const {
    Int e = 1;
    for (const Int& q : gen_orders_)
        if (q != 0)
            e = lcm_int(e, q);
    return e;
}

std::optional<Int> AbGroup::materialized_size() const {
    if (free_rank_ > 0)
        return std::nullopt;
    Int s = 1;
    for (const Int& q : gen_orders_)
        s *= q;
    return s;
}

GroupElement elem_reduce(const AbGroup& g, GroupElement v) {
    if (static_cast<int>(v.size()) != g.num_generators())
        throw std::invalid_argument("elem_reduce: coordinate count mismatch");
    for (int t = 0; t < g.num_generators(); ++t) {
        const Int& q = g.generator_order(t);
        if (q != 0) {
            v[t] %= q;
            if (v[t] < 0)
                v[t] += q;
        }
    }
    return v;
}

GroupElement elem_add(const AbGroup& g, const GroupElement& a, const GroupElement& b) {
    GroupElement out(a);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] += b[i];
    return elem_reduce(g, std::move(out));
}

GroupElement elem_scale(const AbGroup& g, const GroupElement& a, const Int& k) {
    GroupElement out(a);
    for (Int& c : out)
        c *= k;
    return elem_reduce(g, std::move(out));
}

bool elem_is_zero(const GroupElement& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& c) { return c == 0; });
}

Int elem_order(const AbGroup& g, const GroupElement& v) {
    Int ord = 1;
    for (int t = 0; t < g.num_generators(); ++t) {
        if (v[t] == 0)
            continue;
        const Int& q = g.generator_order(t);
        if (q == 0)
            return 0;
        ord = lcm_int(ord, q / gcd(q, v[t]));
    }
    return ord;
}

Angle Character::eval(const AbGroup& g, const GroupElement& v) const {
    if (values.size() != v.size() || static_cast<int>(v.size()) != g.num_generators())
        throw std::invalid_argument("Character::eval: dimension mismatch");
    Angle out;
    for (size_t t = 0; t < v.size(); ++t)
        if (v[t] != 0)
            out = out + values[t] * v[t];
    return out;
}

std::optional<std::string> check_character(const AbGroup& g, const Character& chi) {
    if (static_cast<int>(chi.values.size()) != g.num_generators())
        return "character value count mismatch";
    for (int t = 0; t < g.num_generators(); ++t) {
        const Int& q = g.generator_order(t);
        if (q != 0 && !(chi.values[t] * q).is_zero())
            return "generator " + std::to_string(t) + " of order " + q.get_str() +
                   " mapped to angle " + chi.values[t].str() + " not killed by its order";
    }
    return std::nullopt;
}

bool has_star(const AbGroup& g) {
    if (!g.bounded())
        throw std::invalid_argument("has_star: group must be bounded");
    for (const auto& b : g.primary()) {
        bool dominated = false;
        for (const auto& c : g.primary())
            if (c.p == b.p && c.n >= b.n && !c.mult) {
                dominated = true;
                break;
            }
        if (!dominated)
            return false;
    }
    return true;
}

Int h_gamma_order(const AbGroup& g) {
    if (!g.bounded())
        throw std::invalid_argument("h_gamma_order: group must be bounded");
    Int n = 1;
    for (const auto& b : g.primary())
        if (!b.mult)
            n = lcm_int(n, b.order());
    return n;
}

std::optional<std::pair<Int, int>> discon_obstruction(const AbGroup& g) {
    if (!g.bounded())
        throw std::invalid_argument("discon_obstruction: group must be bounded");
    // For each prime, look at the top exponent present; (*) fails at p exactly
    // when that top block has finite multiplicity.
    std::map<Int, const PrimaryBlock*> top;
    for (const auto& b : g.primary()) {
        auto it = top.find(b.p);
        if (it == top.end() || it->second->n < b.n)
            top[b.p] = &b;
    }
    for (const auto& [p, blk] : top)
        if (blk->mult)
            return std::make_pair(p, blk->n);
    return std::nullopt;
}

// --- Subgroup ------------------------------------------------------------

Subgroup::Subgroup(const AbGroup& g, std::vector<GroupElement> gens)
    : g_(g), gens_(std::move(gens)) {
    int rows = g.num_generators();
    for (auto& v : gens_) {
        if (static_cast<int>(v.size()) != rows)
            throw std::invalid_argument("Subgroup: generator dimension mismatch");
        v = elem_reduce(g, v);
    }
    std::vector<int> torsion;
    for (int t = 0; t < rows; ++t)
        if (g.generator_order(t) != 0)
            torsion.push_back(t);
    size_t cols = gens_.size() + torsion.size();
    IntMat a(rows, std::vector<Int>(cols, 0));
    for (size_t j = 0; j < gens_.size(); ++j)
        for (int i = 0; i < rows; ++i)
            a[i][j] = gens_[j][i];
    for (size_t j = 0; j < torsion.size(); ++j)
        a[torsion[j]][gens_.size() + j] = g.generator_order(torsion[j]);
    sf_ = smith_normal_form(std::move(a));

    for (size_t k = 0; k < sf_.cols; ++k) {
        bool zero_diag = k >= sf_.diag.size() || sf_.diag[k] == 0;
        if (!zero_diag)
            continue;
        std::vector<Int> col(sf_.cols);
        for (size_t i = 0; i < sf_.cols; ++i)
            col[i] = sf_.v[i][k];
        kernel_.push_back(std::move(col));
    }
}

namespace {

// Solve D y = U v; returns y (length cols) or nullopt.
std::optional<std::vector<Int>> solve_diag(const SmithForm& sf, const std::vector<Int>& v) {
    std::vector<Int> c = mat_vec(sf.u, v);
    std::vector<Int> y(sf.cols, 0);
    for (size_t i = 0; i < sf.rows; ++i) {
        Int d = i < sf.diag.size() ? sf.diag[i] : Int(0);
        if (d == 0) {
            if (c[i] != 0)
                return std::nullopt;
        } else {
            if (c[i] % d != 0)
                return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return y;
}

}  // namespace

bool Subgroup::contains(const GroupElement& v) const {
    return solve_diag(sf_, elem_reduce(g_, v)).has_value();
}

std::optional<std::vector<Int>> Subgroup::express(const GroupElement& v) const {
    auto y = solve_diag(sf_, elem_reduce(g_, v));
    if (!y)
        return std::nullopt;
    std::vector<Int> x = mat_vec(sf_.v, *y);
    x.resize(gens_.size());
    return x;
}

Int Subgroup::least_multiple_inside(const GroupElement& v) const {
    GroupElement w = elem_reduce(g_, v);
    std::vector<Int> c = mat_vec(sf_.u, w);
    Int k = 1;
    for (size_t i = 0; i < sf_.rows; ++i) {
        Int d = i < sf_.diag.size() ? sf_.diag[i] : Int(0);
        if (d == 0) {
            if (c[i] != 0)
                return 0;
        } else if (c[i] % d != 0) {
            Int need = d / gcd(d, c[i]);
            k = k / gcd(k, need) * need;
        }
    }
    return k;
}

std::vector<GroupElement> Subgroup::enumerate(size_t cap) const {
    if (!g_.is_torsion_materialization())
        throw std::invalid_argument("Subgroup::enumerate: free part present");
    std::set<GroupElement> seen;
    GroupElement zero(g_.num_generators(), 0);
    seen.insert(zero);
    std::vector<GroupElement> frontier{zero};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier)
            for (const auto& gen : gens_) {
                GroupElement y = elem_add(g_, x, gen);
                if (seen.insert(y).second) {
                    if (seen.size() > cap)
                        throw std::runtime_error("Subgroup::enumerate: cap exceeded");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    return std::vector<GroupElement>(seen.begin(), seen.end());
}

std::optional<std::string> check_sub_character(const Subgroup& d, const SubCharacter& theta) {
    if (theta.values.size() != d.gens().size())
        return "sub-character value count mismatch";
    for (const auto& z : d.kernel_basis()) {
        Angle acc;
        for (size_t j = 0; j < d.gens().size(); ++j)
            if (z[j] != 0)
                acc = acc + theta.values[j] * z[j];
        if (!acc.is_zero())
            return "character violates a relation among the subgroup generators";
    }
    return std::nullopt;
}

Angle eval_sub_character(const Subgroup& d, const SubCharacter& theta, const GroupElement& v) {
    auto x = d.express(v);
    if (!x)
        throw std::invalid_argument("eval_sub_character: element outside subgroup");
    Angle acc;
    for (size_t j = 0; j < x->size(); ++j)
        if ((*x)[j] != 0)
            acc = acc + theta.values[j] * (*x)[j];
    return acc;
}

// --- Density procedures --------------------------------------------------

Character extend_character(const AbGroup& g, const Subgroup& delta, const SubCharacter& theta) {
    if (auto err = check_sub_character(delta, theta))
        throw std::invalid_argument("extend_character: " + *err);
    std::vector<GroupElement> cur_gens = delta.gens();
    std::vector<Angle> cur_vals = theta.values;
    Character out;
    out.values.resize(g.num_generators());
    for (int t = 0; t < g.num_generators(); ++t) {
        Subgroup cur(g, cur_gens);
        SubCharacter cur_theta{cur_vals};
        GroupElement e(g.num_generators(), 0);
        e[t] = 1;
        if (cur.contains(e)) {
            out.values[t] = eval_sub_character(cur, cur_theta, e);
            continue;
        }
        Int k = cur.least_multiple_inside(e);
        Angle val;
        if (k != 0) {
            Angle target = eval_sub_character(cur, cur_theta, elem_scale(g, e, k));
            val = kth_roots(target, k).front();
        }
        out.values[t] = val;
        cur_gens.push_back(std::move(e));
        cur_vals.push_back(val);
    }
    if (auto err = check_character(g, out))
        throw std::logic_error("extend_character postcondition: " + *err);
    // Restriction check on every input generator.
    for (size_t j = 0; j < delta.gens().size(); ++j)
        if (out.eval(g, delta.gens()[j]) != theta.values[j])
            throw std::logic_error("extend_character postcondition: restriction mismatch");
    return out;
}

namespace {

// Odometer over materialized coordinates, lexicographic from zero.
bool next_element(const AbGroup& g, GroupElement& v) {
    for (int t = g.num_generators() - 1; t >= 0; --t) {
        v[t] += 1;
        if (v[t] < g.generator_order(t))
            return true;
        v[t] = 0;
    }
    return false;
}

}  // namespace

DenseTupleResult dense_tuple_step(const AbGroup& g, const Subgroup& f,
                                  const std::vector<SubCharacter>& theta,
                                  const TorusPoint& b, const Rat& eps,
                                  size_t search_cap) {
    if (!g.is_torsion_materialization())
        throw std::invalid_argument("dense_tuple_step: torsion materialization required");
    if (eps <= 0)
        throw std::invalid_argument("dense_tuple_step: eps must be positive");
    if (theta.size() != b.size())
        throw std::invalid_argument("dense_tuple_step: arity mismatch");
    for (const auto& th : theta)
        if (auto err = check_sub_character(f, th))
            throw std::invalid_argument("dense_tuple_step: " + *err);

    Int f_size = Int(f.enumerate(search_cap).size());

    GroupElement gamma0(g.num_generators(), 0);
    bool found = false;
    size_t scanned = 0;
    GroupElement v(g.num_generators(), 0);
    do {
        if (++scanned > search_cap)
            break;
        Int ord = elem_order(g, v);
        if (Rat(ord) * eps > Rat(f_size)) {
            gamma0 = v;
            found = true;
            break;
        }
    } while (next_element(g, v));
    if (!found)
        throw std::runtime_error(
            "dense_tuple_step: no materialized element of order greater than |F|/eps");

    Int k = f.least_multiple_inside(gamma0);
    if (k == 0)
        throw std::logic_error("dense_tuple_step: torsion element with no power in F");

    DenseTupleResult res;
    res.gamma0 = gamma0;
    std::vector<GroupElement> ext_gens = f.gens();
    ext_gens.push_back(gamma0);
    for (size_t i = 0; i < theta.size(); ++i) {
        Angle target = eval_sub_character(f, theta[i], elem_scale(g, gamma0, k));
        Angle best;
        Rat best_d;
        bool first = true;
        for (const Angle& c : kth_roots(target, k)) {
            Rat d = angle_dist(c, b[i]);
            if (first || d < best_d) {
                best = c;
                best_d = d;
                first = false;
            }
        }
        SubCharacter ext_theta{theta[i].values};
        ext_theta.values.push_back(best);
        Subgroup ext(g, ext_gens);
        res.chars.push_back(extend_character(g, ext, ext_theta));
    }

    Rat worst(0);
    for (size_t i = 0; i < res.chars.size(); ++i)
        worst = std::max(worst, angle_dist(res.chars[i].eval(g, gamma0), b[i]));
    if (!(worst < eps))
        throw std::logic_error("dense_tuple_step postcondition: target not within eps");
    return res;
}

HitTargetResult hit_target_bounded(const AbGroup& g, const Subgroup& delta,
                                   const std::vector<SubCharacter>& psi,
                                   const TorusPoint& x) {
    if (!has_star(g))
        throw std::invalid_argument("hit_target_bounded: group lacks property (*)");
    if (psi.size() != x.size())
        throw std::invalid_argument("hit_target_bounded: arity mismatch");
    for (const auto& ps : psi)
        if (auto err = check_sub_character(delta, ps))
            throw std::invalid_argument("hit_target_bounded: " + *err);
    Int n_h = h_gamma_order(g);
    for (const auto& xi : x)
        if (n_h % xi.order() != 0)
            throw std::invalid_argument("hit_target_bounded: target coordinate outside H_Gamma");

    // Top omega block per prime.
    std::map<Int, std::pair<size_t, int>> top;  // p -> (block index, n)
    for (size_t bi = 0; bi < g.primary().size(); ++bi) {
        const auto& blk = g.primary()[bi];
        if (blk.mult)
            continue;
        auto it = top.find(blk.p);
        if (it == top.end() || it->second.second < blk.n)
            top[blk.p] = {bi, blk.n};
    }

    // A generator is spent if it appears in the support of any delta generator.
    std::vector<char> spent(g.num_generators(), 0);
    for (const auto& dg : delta.gens())
        for (int t = 0; t < g.num_generators(); ++t)
            if (dg[t] != 0)
                spent[t] = 1;

    std::vector<int> fresh;  // one materialized generator per top omega block
    std::vector<Int> fresh_q;
    for (const auto& [p, info] : top) {
        int found = -1;
        for (int t = 0; t < g.num_generators(); ++t)
            if (g.generator_block(t) == static_cast<int>(info.first) && !spent[t]) {
                found = t;
                break;
            }
        if (found < 0)
            throw std::runtime_error("hit_target_bounded: truncation too small for a fresh generator in block p=" +
                                     p.get_str());
        spent[found] = 1;
        fresh.push_back(found);
        fresh_q.push_back(int_pow(p, info.second));
    }

    HitTargetResult res;
    res.gamma.assign(g.num_generators(), 0);
    for (int t : fresh)
        res.gamma[t] = 1;

    std::vector<GroupElement> ext_gens = delta.gens();
    for (int t : fresh) {
        GroupElement e(g.num_generators(), 0);
        e[t] = 1;
        ext_gens.push_back(std::move(e));
    }
    Subgroup ext(g, ext_gens);

    for (size_t i = 0; i < psi.size(); ++i) {
        SubCharacter th{psi[i].values};
        // CRT split of x_i across the prime blocks.
        Int num = x[i].value().get_num() * (n_h / x[i].value().get_den());
        for (size_t j = 0; j < fresh.size(); ++j) {
            const Int& q = fresh_q[j];
            Int m = n_h / q;
            Int u;  // inverse of m mod q
            if (mpz_invert(u.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t()) == 0)
                throw std::logic_error("hit_target_bounded: CRT inverse failed");
            Int a = (num * u) % q;
            if (a < 0)
                a += q;
            th.values.push_back(Angle(Rat(a) / Rat(q)));
        }
        res.chars.push_back(extend_character(g, ext, th));
        if (res.chars.back().eval(g, res.gamma) != x[i])
            throw std::logic_error("hit_target_bounded postcondition: exact hit failed");
    }
    return res;
}

Rat covering_radius_torus(const std::vector<TorusPoint>& gens, size_t cap) {
    if (gens.empty())
        throw std::invalid_argument("covering_radius_torus: empty generator list");
    size_t n = gens[0].size();
    for (const auto& p : gens)
        if (p.size() != n)
            throw std::invalid_argument("covering_radius_torus: arity mismatch");

    // Closure of the generated finite subgroup.
    std::set<std::vector<Rat>> seen;
    auto key = [](const TorusPoint& p) {
        std::vector<Rat> k;
        for (const auto& a : p)
            k.push_back(a.value());
        return k;
    };
    TorusPoint zero(n);
    std::vector<TorusPoint> members{zero};
    seen.insert(key(zero));
    std::vector<TorusPoint> frontier{zero};
    while (!frontier.empty()) {
        std::vector<TorusPoint> next;
        for (const auto& s : frontier)
            for (const auto& gpt : gens) {
                TorusPoint t(n);
                for (size_t i = 0; i < n; ++i)
                    t[i] = s[i] + gpt[i];
                if (seen.insert(key(t)).second) {
                    if (seen.size() > cap)
                        throw std::runtime_error("covering_radius_torus: subgroup cap exceeded");
                    members.push_back(t);
                    next.push_back(std::move(t));
                }
            }
        frontier = std::move(next);
    }

    // All extrema of x -> min_s maxdist(x, s) have coordinates on the
    // half-grid of the common denominator.
    Int l = 1;
    for (const auto& s : members)
        for (const auto& a : s)
            l = l / gcd(l, a.value().get_den()) * a.value().get_den();
    Int grid = 2 * l;
    Rat step = Rat(1) / Rat(grid);

    Int total = 1;
    for (size_t i = 0; i < n; ++i) {
        total *= grid;
        if (total * Int(members.size()) > Int(static_cast<unsigned long>(cap)))
            throw std::runtime_error("covering_radius_torus: grid cap exceeded");
    }

    std::vector<Int> idx(n, 0);
    Rat best(0);
    while (true) {
        TorusPoint x(n);
        for (size_t i = 0; i < n; ++i)
            x[i] = Angle(Rat(idx[i]) * step);
        Rat dmin;
        bool first = true;
        for (const auto& s : members) {
            Rat d = torus_dist_max(x, s);
            if (first || d < dmin) {
                dmin = d;
                first = false;
            }
        }
        best = std::max(best, dmin);
        size_t t = 0;
        while (t < n) {
            idx[t] += 1;
            if (idx[t] < grid)
                break;
            idx[t] = 0;
            ++t;
        }
        if (t == n)
            return best;
    }
}

}  // namespace egw
