#include "egw/unitaryfd.hpp"

#include <map>
#include <stdexcept>

namespace egw {

unsigned long DiagRep::conductor() const {
    Int e = group.exponent();
    if (!e.fits_ulong_p())
        throw std::length_error("group exponent too large for a conductor");
    return e.get_ui();
}

DiagRep make_diag_rep(AbGroup group, std::vector<Character> chars) {
    if (!group.materialized_size())
        throw std::invalid_argument("representation needs a finite group");
    for (size_t i = 0; i < chars.size(); ++i)
        if (auto err = check_character(group, chars[i]))
            throw std::invalid_argument("character " + std::to_string(i + 1) + ": " + *err);
    return DiagRep{std::move(group), std::move(chars)};
}

void check_vector(const DiagRep& rep, const FdVector& xi) {
    if (xi.size() != size_t(rep.dim()))
        throw std::invalid_argument("vector length does not match the dimension");
    for (const CycloNumber& a : xi)
        if (a.conductor() != rep.conductor())
            throw std::invalid_argument("coefficient conductor mismatch");
}

std::vector<GroupElement> enumerate_group(const AbGroup& g, size_t cap) {
    auto size = g.materialized_size();
    if (!size)
        throw std::invalid_argument("cannot enumerate an infinite group");
    if (*size > long(cap))
        throw std::length_error("group too large to enumerate");
    std::vector<GroupElement> out;
    GroupElement cur(g.num_generators(), 0);
    while (true) {
        out.push_back(cur);
        int t = g.num_generators() - 1;
        while (t >= 0 && Int(cur[t] + 1) == g.generator_order(t)) {
            cur[t] = 0;
            --t;
        }
        if (t < 0)
            break;
        cur[t] += 1;
    }
    return out;
}

namespace {

CycloNumber char_value(const DiagRep& rep, const Character& chi, const GroupElement& g) {
    return CycloNumber::from_angle(rep.conductor(), chi.eval(rep.group, g));
}

}  // namespace

CyclicResult is_cyclic(const DiagRep& rep, const FdVector& xi, int cap_dim, size_t cap_group) {
    check_vector(rep, xi);
    int m = rep.dim();
    if (m > cap_dim)
        throw std::length_error("dimension above the cap");
    CyclicResult res;
    for (int i = 0; i < m; ++i)
        if (xi[i].is_zero()) {
            res.reason = "zero coefficient " + std::to_string(i + 1);
            return res;
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (rep.chars[i].values == rep.chars[j].values) {
                res.reason = "repeated character pair " + std::to_string(i + 1) + "," +
                             std::to_string(j + 1);
                return res;
            }

    // greedy row selection: keep the evaluation rows independent
    std::vector<GroupElement> elems = enumerate_group(rep.group, cap_group);
    std::vector<std::vector<CycloNumber>> rows;      // chosen, original form
    std::vector<std::vector<CycloNumber>> echelon;   // eliminated copies
    std::vector<int> pivots;
    for (const GroupElement& g : elems) {
        if (static_cast<int>(rows.size()) == m)
            break;
        std::vector<CycloNumber> row(m), work(m);
        for (int i = 0; i < m; ++i)
            row[i] = work[i] = xi[i] * char_value(rep, rep.chars[i], g);
        for (size_t r = 0; r < echelon.size(); ++r) {
            CycloNumber factor = work[pivots[r]] * echelon[r][pivots[r]].inverse();
            for (int i = 0; i < m; ++i)
                work[i] = work[i] - factor * echelon[r][i];
        }
        int piv = -1;
        for (int i = 0; i < m && piv < 0; ++i)
            if (!work[i].is_zero())
                piv = i;
        if (piv < 0)
            continue;
        res.witnesses.push_back(g);
        rows.push_back(std::move(row));
        echelon.push_back(std::move(work));
        pivots.push_back(piv);
    }
    if (static_cast<int>(rows.size()) != m)
        throw std::logic_error("no independent tuple found despite nonzero distinct data");
    res.det = cyclo_det(rows);
    if (res.det.is_zero())
        throw std::logic_error("certificate determinant vanished");
    res.cyclic = true;
    return res;
}

CycloNumber positive_definite_fn(const DiagRep& rep, const FdVector& xi, const GroupElement& g) {
    check_vector(rep, xi);
    CycloNumber sum(rep.conductor(), Rat(0));
    for (int i = 0; i < rep.dim(); ++i)
        sum = sum + xi[i].norm_sq() * char_value(rep, rep.chars[i], g);
    return sum;
}

SpectralMeasure spectral_measure(const DiagRep& rep, const FdVector& xi, size_t cap_group) {
    check_vector(rep, xi);
    std::map<std::vector<Angle>, Rat> mass;
    std::vector<std::vector<Angle>> order;
    for (int i = 0; i < rep.dim(); ++i) {
        CycloNumber sq = xi[i].norm_sq();
        Rat w = sq.is_zero() ? Rat(0) : sq.rational_value();
        if (w < 0)
            throw std::logic_error("negative square modulus");
        auto [it, fresh] = mass.emplace(rep.chars[i].values, w);
        if (fresh)
            order.push_back(rep.chars[i].values);
        else
            it->second += w;
    }
    SpectralMeasure out;
    for (const auto& key : order) {
        out.atoms.push_back(Character{key});
        out.masses.push_back(mass.at(key));
    }
    // Bochner identity at every group element, no tolerance
    for (const GroupElement& g : enumerate_group(rep.group, cap_group)) {
        CycloNumber lhs(rep.conductor(), Rat(0));
        for (size_t k = 0; k < out.atoms.size(); ++k)
            lhs = lhs + CycloNumber(rep.conductor(), out.masses[k]) *
                            char_value(rep, out.atoms[k], g);
        if (!(lhs == positive_definite_fn(rep, xi, g)))
            throw std::logic_error("spectral masses fail the transform identity");
    }
    return out;
}

C1Result c1_search(const DiagRep& rep, const std::vector<Angle>& target, const Rat& eps,
                   size_t cap_group) {
    if (target.size() != size_t(rep.dim()))
        throw std::invalid_argument("one target value per character required");
    for (int i = 0; i < rep.dim(); ++i)
        for (int j = i + 1; j < rep.dim(); ++j)
            if (rep.chars[i].values == rep.chars[j].values)
                throw std::invalid_argument("characters must be distinct");
    C1Result res;
    bool first = true;
    for (const GroupElement& g : enumerate_group(rep.group, cap_group)) {
        Rat worst(0);
        for (int j = 0; j < rep.dim(); ++j)
            worst = std::max(worst, angle_dist(rep.chars[j].eval(rep.group, g), target[j]));
        if (first || worst < res.best) {
            res.best = worst;
            res.gamma = g;
            first = false;
        }
    }
    res.found = !first && res.best < eps;
    return res;
}

}  // namespace egw
