#include "egw/lzero.hpp"

#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace egw {

void validate_step(const StepMap& f) {
    if (f.level < 0 || f.level > 30)
        throw std::invalid_argument("step map level out of range");
    if (f.values.size() != (size_t(1) << f.level))
        throw std::invalid_argument("step map needs exactly 2^level values");
}

StepMap refine(const StepMap& f, int m) {
    validate_step(f);
    if (m < f.level)
        throw std::invalid_argument("cannot refine to a coarser level");
    StepMap out;
    out.level = m;
    size_t copies = size_t(1) << (m - f.level);
    for (const Angle& a : f.values)
        out.values.insert(out.values.end(), copies, a);
    return out;
}

Rat step_dist(const StepMap& f, const StepMap& g) {
    validate_step(f);
    validate_step(g);
    int m = std::max(f.level, g.level);
    StepMap a = refine(f, m), b = refine(g, m);
    Rat sum(0);
    for (size_t i = 0; i < a.values.size(); ++i)
        sum += angle_dist(a.values[i], b.values[i]);
    return Rat(sum / Rat(Int(1) << m));
}

StepMap step_mul(const StepMap& f, const StepMap& g) {
    validate_step(f);
    validate_step(g);
    int m = std::max(f.level, g.level);
    StepMap a = refine(f, m), b = refine(g, m);
    for (size_t i = 0; i < a.values.size(); ++i)
        a.values[i] = a.values[i] + b.values[i];
    return a;
}

StepGroup::StepGroup(int level, BiInvMetricGroup k) : level_(level), k_(std::move(k)) {
    if (level < 0 || level > 20)
        throw std::invalid_argument("step group level out of range");
}

StepGroup::Elem StepGroup::identity() const {
    return Elem(slots(), k_.group().identity());
}

StepGroup::Elem StepGroup::mul(const Elem& a, const Elem& b) const {
    if (a.size() != size_t(slots()) || b.size() != size_t(slots()))
        throw std::invalid_argument("step group element has wrong length");
    Elem out(slots());
    for (int i = 0; i < slots(); ++i)
        out[i] = k_.group().mul(a[i], b[i]);
    return out;
}

StepGroup::Elem StepGroup::inv(const Elem& a) const {
    Elem out(slots());
    for (int i = 0; i < slots(); ++i)
        out[i] = k_.group().inv(a[i]);
    return out;
}

Rat StepGroup::dist(const Elem& a, const Elem& b) const {
    if (a.size() != size_t(slots()) || b.size() != size_t(slots()))
        throw std::invalid_argument("step group element has wrong length");
    Rat sum(0);
    for (int i = 0; i < slots(); ++i)
        sum += k_.d(a[i], b[i]);
    return Rat(sum / Rat(slots()));
}

StepGroup::Elem StepGroup::refined(const Elem& a, int m) const {
    if (m < level_)
        throw std::invalid_argument("cannot refine to a coarser level");
    Elem out;
    size_t copies = size_t(1) << (m - level_);
    for (int v : a)
        out.insert(out.end(), copies, v);
    return out;
}

Int StepGroup::size() const {
    Int s = 1;
    for (int i = 0; i < slots(); ++i)
        s *= k_.size();
    return s;
}

std::vector<StepGroup::Elem> StepGroup::enumerate(long cap) const {
    if (size() > cap)
        throw std::length_error("step group too large to enumerate");
    std::vector<Elem> out;
    Elem cur(slots(), 0);
    while (true) {
        out.push_back(cur);
        int t = 0;
        while (t < slots() && ++cur[t] == k_.size()) {
            cur[t] = 0;
            ++t;
        }
        if (t == slots())
            break;
    }
    return out;
}

StepMap StepHom::eval(const AbGroup& g, const std::vector<Int>& elem) const {
    StepMap out;
    out.level = level;
    for (const Character& chi : chars)
        out.values.push_back(chi.eval(g, elem));
    return out;
}

StepHom hom_from_characters(const AbGroup& g, int level, std::vector<Character> chars) {
    if (level < 0 || chars.size() != (size_t(1) << level))
        throw std::invalid_argument("need exactly 2^level characters");
    for (const Character& chi : chars)
        if (auto err = check_character(g, chi))
            throw std::invalid_argument("incompatible character: " + *err);
    // Multiplicativity on the materialized generators, slot by slot.
    for (const Character& chi : chars)
        for (int s = 0; s < g.num_generators(); ++s)
            for (int t = 0; t < g.num_generators(); ++t) {
                GroupElement a(g.num_generators(), 0), b(g.num_generators(), 0);
                a[s] = 1;
                b[t] = 1;
                if (chi.eval(g, elem_add(g, a, b)) != chi.eval(g, a) + chi.eval(g, b))
                    throw std::logic_error("character evaluation is not multiplicative");
            }
    return StepHom{level, std::move(chars)};
}

SurjHom surjective_hom(const AbGroup& g, int level, long enum_cap) {
    if (!has_star(g))
        throw std::invalid_argument("group lacks the cofinal-omega condition");
    Int h = h_gamma_order(g);
    if (h == 1)
        throw std::invalid_argument("trivial cyclic target");
    int slots = 1 << level;

    // One top-order omega block per prime dividing h.
    std::vector<int> top_blocks;
    for (size_t b = 0; b < g.primary().size(); ++b) {
        const PrimaryBlock& blk = g.primary()[b];
        if (blk.mult)
            continue;
        bool top = true;
        for (const PrimaryBlock& other : g.primary())
            if (!other.mult && other.p == blk.p && other.n > blk.n)
                top = false;
        if (top)
            top_blocks.push_back(static_cast<int>(b));
    }
    for (int b : top_blocks)
        if (g.primary()[b].trunc < slots)
            throw std::invalid_argument("truncation insufficient: block needs " +
                                        std::to_string(slots) + " generators");

    // Slot t's character sends the t-th generator of each top block to the
    // canonical root of unity of that block's order, everything else to 0.
    std::vector<Character> chars(slots, Character{std::vector<Angle>(g.num_generators())});
    for (int b : top_blocks) {
        Int q = g.primary()[b].order();
        int seen = 0;
        for (int t = 0; t < g.num_generators(); ++t) {
            if (g.generator_block(t) != b)
                continue;
            if (seen < slots)
                chars[seen].values[t] = Angle(Rat(1, q));
            ++seen;
        }
    }
    StepHom hom = hom_from_characters(g, level, std::move(chars));

    // Exact image enumeration inside (Z_h)^slots.
    Int expect = 1;
    for (int i = 0; i < slots; ++i)
        expect *= h;
    if (expect > enum_cap)
        throw std::length_error("image too large to enumerate");
    long hl = h.get_si();
    long total = expect.get_si();

    // Generator images as residues mod h, packed in mixed radix base h.
    std::vector<long> gens;
    for (int t = 0; t < g.num_generators(); ++t) {
        long packed = 0, weight = 1;
        for (int s = 0; s < slots; ++s) {
            const Angle& a = hom.chars[s].values[t];
            // a = j / q with q | h
            Int j = Int(a.value().get_num() * (h / a.value().get_den()));
            packed += Int(j % h).get_si() * weight;
            weight *= hl;
        }
        if (packed != 0)
            gens.push_back(packed);
    }
    std::vector<char> seen(total, 0);
    std::vector<long> work{0};
    seen[0] = 1;
    long count = 1;
    while (!work.empty()) {
        long cur = work.back();
        work.pop_back();
        for (long gen : gens) {
            long nxt = 0, weight = 1, c = cur, gg = gen;
            for (int i = 0; i < slots; ++i) {
                nxt += (c % hl + gg % hl) % hl * weight;
                c /= hl;
                gg /= hl;
                weight *= hl;
            }
            if (!seen[nxt]) {
                seen[nxt] = 1;
                ++count;
                work.push_back(nxt);
            }
        }
    }
    Int got = count;
    if (got != expect)
        throw std::logic_error("homomorphism image is not the full power of the cyclic target");
    return SurjHom{std::move(hom), h, got};
}

DensityReport density_report(const StepGroup& sg, const std::vector<StepGroup::Elem>& gens,
                             long cap) {
    std::vector<StepGroup::Elem> all = sg.enumerate(cap);
    std::set<StepGroup::Elem> sub;
    std::queue<StepGroup::Elem> work;
    sub.insert(sg.identity());
    work.push(sg.identity());
    while (!work.empty()) {
        StepGroup::Elem cur = work.front();
        work.pop();
        for (const auto& gen : gens) {
            StepGroup::Elem nxt = sg.mul(cur, gen);
            if (sub.insert(nxt).second)
                work.push(nxt);
        }
    }
    DensityReport rep{Rat(-1), {}};
    for (const auto& x : all) {
        Rat best(-1);
        for (const auto& s : sub) {
            Rat d = sg.dist(x, s);
            if (best < 0 || d < best)
                best = d;
        }
        if (best > rep.radius) {
            rep.radius = best;
            rep.witness = x;
        }
    }
    return rep;
}

}  // namespace egw
