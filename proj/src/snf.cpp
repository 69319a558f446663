#include "egw/snf.hpp"

#include <stdexcept>

namespace egw {

IntMat mat_identity(size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& x) {
    std::vector<Int> out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.size())
            throw std::invalid_argument("mat_vec: dimension mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            out[i] += m[i][j] * x[j];
    }
    return out;
}

namespace {

// Row ops on A mirrored on U; column ops mirrored on V.
void row_swap(IntMat& a, IntMat& u, size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}
void row_addmul(IntMat& a, IntMat& u, size_t dst, size_t src, const Int& c) {
    for (size_t k = 0; k < a[dst].size(); ++k)
        a[dst][k] += c * a[src][k];
    for (size_t k = 0; k < u[dst].size(); ++k)
        u[dst][k] += c * u[src][k];
}
void row_negate(IntMat& a, IntMat& u, size_t i) {
    for (auto& x : a[i])
        x = -x;
    for (auto& x : u[i])
        x = -x;
}
void col_swap(IntMat& a, IntMat& v, size_t i, size_t j) {
    for (auto& row : a)
        std::swap(row[i], row[j]);
    for (auto& row : v)
        std::swap(row[i], row[j]);
}
void col_addmul(IntMat& a, IntMat& v, size_t dst, size_t src, const Int& c) {
    for (auto& row : a)
        row[dst] += c * row[src];
    for (auto& row : v)
        row[dst] += c * row[src];
}
}  // namespace

SmithForm smith_normal_form(IntMat a) {
    SmithForm sf;
    sf.rows = a.size();
    sf.cols = sf.rows ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != sf.cols)
            throw std::invalid_argument("smith_normal_form: ragged matrix");
    sf.u = mat_identity(sf.rows);
    sf.v = mat_identity(sf.cols);

    size_t t = 0;
    size_t lim = std::min(sf.rows, sf.cols);
    while (t < lim) {
        // Find a nonzero pivot in the remaining block.
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < sf.rows && !found; ++i)
            for (size_t j = t; j < sf.cols && !found; ++j)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found)
            break;
        row_swap(a, sf.u, t, pi);
        col_swap(a, sf.v, t, pj);

        // Reduce row and column t until the pivot divides everything it meets.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < sf.rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                Int q = a[i][t] / a[t][t];
                row_addmul(a, sf.u, i, t, -q);
                if (a[i][t] != 0) {
                    row_swap(a, sf.u, t, i);
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < sf.cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                Int q = a[t][j] / a[t][t];
                col_addmul(a, sf.v, j, t, -q);
                if (a[t][j] != 0) {
                    col_swap(a, sf.v, t, j);
                    dirty = true;
                }
            }
        }
        ++t;
    }

    for (size_t i = 0; i < lim; ++i)
        if (a[i][i] < 0)
            row_negate(a, sf.u, i);

    sf.diag.assign(lim, 0);
    for (size_t i = 0; i < lim; ++i)
        sf.diag[i] = a[i][i];
    return sf;
}

}  // namespace egw
