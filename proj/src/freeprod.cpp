#include "egw/freeprod.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace egw {

namespace {

std::vector<Int> mod_vec(const std::vector<Int>& v, const std::vector<Int>& p) {
    std::vector<Int> out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = Int((v[i] % p[i] + p[i]) % p[i]);
    return out;
}

bool all_zero(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0)
            return false;
    return true;
}

void check_ranks(int d, int n, const Word& w) {
    for (const Syllable& s : w.syl) {
        if (s.exps.empty() == s.letters.empty())
            throw std::invalid_argument("syllable must be abelian or free, not both");
        if (s.abelian() && s.exps.size() != size_t(d))
            throw std::invalid_argument("abelian syllable has wrong length");
        for (int l : s.letters)
            if (l == 0 || l > n || l < -n)
                throw std::invalid_argument("free letter out of range");
    }
}

// Stack normalization; with moduli the abelian coordinates live in [0, p_i).
Word normalize_core(int d, int n, const Word& w, const std::vector<Int>* p) {
    check_ranks(d, n, w);
    std::vector<Syllable> out;
    auto push_ab = [&](const std::vector<Int>& e) {
        std::vector<Int> sum = e;
        if (!out.empty() && out.back().abelian()) {
            for (int i = 0; i < d; ++i)
                sum[i] += out.back().exps[i];
            out.pop_back();
        }
        if (p)
            sum = mod_vec(sum, *p);
        if (!all_zero(sum))
            out.push_back(syl_ab(sum));
    };
    auto push_letter = [&](int l) {
        if (!out.empty() && !out.back().abelian() && out.back().letters.back() == -l) {
            out.back().letters.pop_back();
            if (out.back().letters.empty())
                out.pop_back();
        } else if (!out.empty() && !out.back().abelian()) {
            out.back().letters.push_back(l);
        } else {
            out.push_back(syl_free({l}));
        }
    };
    for (const Syllable& s : w.syl) {
        if (s.abelian())
            push_ab(s.exps);
        else
            for (int l : s.letters)
                push_letter(l);
    }
    return Word{std::move(out)};
}

// One generator step: a whole abelian syllable or a single free letter.
struct Atom {
    std::vector<Int> exps;
    int letter = 0;
};

std::vector<Atom> word_atoms(const Word& w) {
    std::vector<Atom> out;
    for (const Syllable& s : w.syl) {
        if (s.abelian())
            out.push_back({s.exps, 0});
        else
            for (int l : s.letters)
                out.push_back({{}, l});
    }
    return out;
}

}  // namespace

Syllable syl_ab(const std::vector<Int>& exps) { return Syllable{exps, {}}; }

Syllable syl_free(const std::vector<int>& letters) { return Syllable{{}, letters}; }

std::string word_defect(int d, int n, const Word& w) {
    try {
        check_ranks(d, n, w);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    for (size_t i = 0; i < w.syl.size(); ++i) {
        const Syllable& s = w.syl[i];
        if (s.abelian() && all_zero(s.exps))
            return "trivial abelian syllable";
        for (size_t j = 0; j + 1 < s.letters.size(); ++j)
            if (s.letters[j] == -s.letters[j + 1])
                return "free syllable not reduced";
        if (i > 0 && w.syl[i - 1].abelian() == s.abelian())
            return "adjacent syllables from the same block";
    }
    return "";
}

Word word_normalize(int d, int n, const Word& w) { return normalize_core(d, n, w, nullptr); }

Word word_mul(int d, int n, const Word& u, const Word& v) {
    Word cat = u;
    cat.syl.insert(cat.syl.end(), v.syl.begin(), v.syl.end());
    return normalize_core(d, n, cat, nullptr);
}

Word word_inverse(const Word& w) {
    Word out;
    for (auto it = w.syl.rbegin(); it != w.syl.rend(); ++it) {
        Syllable s;
        for (const Int& e : it->exps)
            s.exps.push_back(Int(-e));
        for (auto lt = it->letters.rbegin(); lt != it->letters.rend(); ++lt)
            s.letters.push_back(-*lt);
        out.syl.push_back(std::move(s));
    }
    return out;
}

std::string word_str(const Word& w) {
    if (w.identity())
        return "1";
    std::string out;
    for (const Syllable& s : w.syl) {
        if (s.abelian()) {
            for (size_t i = 0; i < s.exps.size(); ++i) {
                if (s.exps[i] == 0)
                    continue;
                if (!out.empty())
                    out += '*';
                out += "e" + std::to_string(i + 1);
                if (s.exps[i] != 1)
                    out += "^" + s.exps[i].get_str();
            }
        } else {
            for (int l : s.letters) {
                if (!out.empty())
                    out += '*';
                out += "a" + std::to_string(std::abs(l));
                if (l < 0)
                    out += "^-1";
            }
        }
    }
    return out;
}

MaxExponent max_exponent(const std::vector<Word>& c) {
    Int n = 0;
    for (const Word& w : c)
        for (const Syllable& s : w.syl)
            for (const Int& e : s.exps)
                n = std::max(n, Int(abs(e)));
    return MaxExponent{n, Int(2 * n + 1)};
}

Word exponent_reduce(const Word& w, const std::vector<Int>& p, int n) {
    for (const Int& pi : p)
        if (pi < 1)
            throw std::invalid_argument("modulus must be positive");
    return normalize_core(static_cast<int>(p.size()), n, w, &p);
}

Perm PermQuotient::act(const Word& w) const {
    Word r = exponent_reduce(w, moduli, free_rank);
    Perm res = perm_identity(carrier.size());
    auto apply = [&](const Perm& g) {
        for (int& x : res)
            x = g[x];
    };
    for (const Atom& at : word_atoms(r)) {
        if (at.letter != 0) {
            apply(at.letter > 0 ? free_perms[at.letter - 1]
                                : perm_inverse(free_perms[-at.letter - 1]));
        } else {
            for (size_t i = 0; i < at.exps.size(); ++i)
                for (Int k = 0; k < at.exps[i]; ++k)
                    apply(abelian_perms[i]);
        }
    }
    return res;
}

PermQuotient separating_quotient(const std::vector<Int>& p, int n, const std::vector<Word>& c2,
                                 size_t carrier_cap) {
    int d = static_cast<int>(p.size());
    std::vector<long> pl(d);
    Int asize = 1;
    for (int i = 0; i < d; ++i) {
        if (p[i] < 1 || !p[i].fits_slong_p() || p[i].get_si() > 1000)
            throw std::invalid_argument("modulus out of range");
        pl[i] = p[i].get_si();
        asize *= p[i];
    }
    if (asize > 20000)
        throw std::length_error("abelian block too large to enumerate");

    auto mul_mod = [&](const Word& u, const Word& v) {
        Word cat = u;
        cat.syl.insert(cat.syl.end(), v.syl.begin(), v.syl.end());
        return normalize_core(d, n, cat, &p);
    };

    std::vector<Word> reduced;
    std::set<Word> prefixes;
    prefixes.insert(Word{});
    for (const Word& w : c2) {
        Word r = exponent_reduce(w, p, n);
        if (r.identity())
            throw std::invalid_argument("word collapses in the quotient: " + word_str(w));
        Word acc;
        for (const Atom& at : word_atoms(r)) {
            Word step = at.letter != 0 ? Word{{syl_free({at.letter})}} : Word{{syl_ab(at.exps)}};
            acc = mul_mod(acc, step);
            prefixes.insert(acc);
        }
        reduced.push_back(std::move(r));
    }

    // all abelian exponent vectors, odometer order
    std::vector<std::vector<Int>> avecs;
    std::vector<long> cur(d, 0);
    while (true) {
        avecs.emplace_back(cur.begin(), cur.end());
        int t = 0;
        while (t < d && ++cur[t] == pl[t]) {
            cur[t] = 0;
            ++t;
        }
        if (t == d)
            break;
    }

    // close every prefix into its full right coset of the abelian block
    std::set<Word> closed;
    for (const Word& u : prefixes)
        for (const auto& a : avecs) {
            closed.insert(all_zero(a) ? u : mul_mod(u, Word{{syl_ab(a)}}));
            if (closed.size() > carrier_cap)
                throw std::length_error("carrier exceeds the cap");
        }

    PermQuotient q;
    q.moduli = p;
    q.free_rank = n;
    q.carrier.assign(closed.begin(), closed.end());
    std::stable_sort(q.carrier.begin(), q.carrier.end(), [](const Word& a, const Word& b) {
        return std::make_pair(word_atoms(a).size(), word_str(a)) <
               std::make_pair(word_atoms(b).size(), word_str(b));
    });
    std::map<Word, int> idx;
    for (size_t i = 0; i < q.carrier.size(); ++i) {
        q.labels.push_back(word_str(q.carrier[i]));
        idx[q.carrier[i]] = static_cast<int>(i);
    }
    q.base = idx.at(Word{});
    int m = static_cast<int>(q.carrier.size());

    for (int i = 0; i < d; ++i) {
        std::vector<Int> e(d, 0);
        e[i] = 1;
        Perm perm(m);
        for (int u = 0; u < m; ++u)
            perm[u] = idx.at(mul_mod(q.carrier[u], Word{{syl_ab(e)}}));
        q.abelian_perms.push_back(std::move(perm));
    }
    for (int j = 1; j <= n; ++j) {
        Perm perm(m, -1);
        std::vector<char> hit(m, 0);
        for (int u = 0; u < m; ++u) {
            auto it = idx.find(mul_mod(q.carrier[u], Word{{syl_free({j})}}));
            if (it != idx.end()) {
                perm[u] = it->second;
                hit[it->second] = 1;
            }
        }
        std::vector<int> free_src, free_tgt;
        for (int u = 0; u < m; ++u) {
            if (perm[u] < 0)
                free_src.push_back(u);
            if (!hit[u])
                free_tgt.push_back(u);
        }
        for (size_t k = 0; k < free_src.size(); ++k)
            perm[free_src[k]] = free_tgt[k];
        if (!is_permutation(perm))
            throw std::logic_error("free generator completion is not a permutation");
        q.free_perms.push_back(std::move(perm));
    }

    // the abelian images realize the multiplication table of prod Z(p_i)
    for (const auto& a : avecs) {
        Perm direct(m);
        for (int u = 0; u < m; ++u)
            direct[u] = idx.at(all_zero(a) ? q.carrier[u] : mul_mod(q.carrier[u], Word{{syl_ab(a)}}));
        if (q.act(Word{{syl_ab(a)}}) != direct && !all_zero(a))
            throw std::logic_error("abelian action disagrees with the group table");
    }

    // every input word moves the base point to its own prefix
    for (const Word& r : reduced) {
        Perm pr = q.act(r);
        if (pr[q.base] != idx.at(r) || pr[q.base] == q.base)
            throw std::logic_error("word acts trivially on the carrier: " + word_str(r));
    }
    return q;
}

QuotientResult build_quotient(int d, int n, const std::vector<Word>& c, const std::vector<Int>& p,
                              bool relaxed, size_t carrier_cap) {
    if (static_cast<int>(p.size()) != d)
        throw std::invalid_argument("need one modulus per abelian generator");
    for (const Word& w : c)
        if (!word_defect(d, n, w).empty())
            throw std::invalid_argument("word not in normal form: " + word_defect(d, n, w));
    MaxExponent bound = max_exponent(c);
    for (const Int& pi : p)
        if (pi < bound.m)
            throw std::invalid_argument("modulus below the injectivity bound " + bound.m.get_str());
    if (!relaxed) {
        auto is_prime = [](const Int& x) {
            if (x < 2)
                return false;
            for (Int f = 2; f * f <= x; ++f)
                if (x % f == 0)
                    return false;
            return true;
        };
        for (size_t i = 0; i < p.size(); ++i) {
            if (!is_prime(p[i]))
                throw std::invalid_argument("moduli must be distinct primes");
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] == p[j])
                    throw std::invalid_argument("moduli must be distinct primes");
        }
    }

    // pairwise quotients plus the full abelian block force separation
    std::set<Word> c2;
    for (const Word& w : c) {
        Word r = exponent_reduce(w, p, n);
        if (!r.identity())
            c2.insert(r);
    }
    for (const Word& u : c)
        for (const Word& v : c)
            if (!(u == v)) {
                Word quo = exponent_reduce(word_mul(d, n, word_inverse(u), v), p, n);
                if (quo.identity())
                    throw std::logic_error("projection failed to separate a pair");
                c2.insert(quo);
            }
    {
        std::vector<long> pl(d), cur(d, 0);
        for (int i = 0; i < d; ++i)
            pl[i] = p[i].get_si();
        while (true) {
            int t = 0;
            while (t < d && ++cur[t] == pl[t]) {
                cur[t] = 0;
                ++t;
            }
            if (t == d)
                break;
            c2.insert(Word{{syl_ab(std::vector<Int>(cur.begin(), cur.end()))}});
        }
    }

    QuotientResult res{separating_quotient(p, n, {c2.begin(), c2.end()}, carrier_cap), bound};
    const PermQuotient& q = res.q;

    // injectivity on C
    std::vector<Perm> images;
    for (const Word& w : c)
        images.push_back(q.act(w));
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
            if (images[i] == images[j] && !(c[i] == c[j]))
                throw std::logic_error("quotient is not injective on the word set");
    // exact generator orders and commutation
    for (int i = 0; i < d; ++i) {
        if (perm_order(q.abelian_perms[i]) != p[i].get_si())
            throw std::logic_error("abelian generator image has the wrong order");
        for (int j = i + 1; j < d; ++j)
            if (perm_compose(q.abelian_perms[i], q.abelian_perms[j]) !=
                perm_compose(q.abelian_perms[j], q.abelian_perms[i]))
                throw std::logic_error("abelian generator images do not commute");
    }
    return res;
}

}  // namespace egw
