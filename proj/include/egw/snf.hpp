#pragma once

#include <vector>

#include "egw/rational.hpp"

namespace egw {

using IntMat = std::vector<std::vector<Int>>;

// Diagonalization over Z: U * A * V = D with U, V unimodular and D diagonal
// with non-negative entries (divisor chain not enforced; membership and
// expression queries only need diagonality).
struct SmithForm {
    IntMat u;     // rows x rows
    IntMat v;     // cols x cols
    std::vector<Int> diag;  // length min(rows, cols)
    size_t rows = 0, cols = 0;
};

SmithForm smith_normal_form(IntMat a);

IntMat mat_identity(size_t n);
std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& x);

}  // namespace egw
