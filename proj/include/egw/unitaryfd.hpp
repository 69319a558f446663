#pragma once

#include <string>
#include <vector>

#include "egw/abgroup.hpp"
#include "egw/cyclo.hpp"

namespace egw {

// Diagonal unitary representation of a finite abelian group: basis vector i
// is scaled by the root of unity chi_i(gamma).
struct DiagRep {
    AbGroup group;
    std::vector<Character> chars;

    int dim() const { return static_cast<int>(chars.size()); }
    // Conductor shared by all matrix entries.
    unsigned long conductor() const;
};

// Validated constructor: finite group, order-compatible characters.
DiagRep make_diag_rep(AbGroup group, std::vector<Character> chars);

// Coefficient vector over the cyclotomic field of the group exponent.
using FdVector = std::vector<CycloNumber>;

void check_vector(const DiagRep& rep, const FdVector& xi);

// Lexicographic odometer over the materialized generators.
std::vector<GroupElement> enumerate_group(const AbGroup& g, size_t cap = 4096);

struct CyclicResult {
    bool cyclic = false;
    std::vector<GroupElement> witnesses;  // gamma_1..gamma_m when cyclic
    CycloNumber det;                      // nonzero determinant certificate
    std::string reason;                   // zero coefficient or repeated character
};

// xi is cyclic iff all coefficients are nonzero and the characters are
// pairwise distinct; the certificate is a group tuple whose evaluation
// matrix (a_i <gamma_j, chi_i>) has nonzero determinant.
CyclicResult is_cyclic(const DiagRep& rep, const FdVector& xi, int cap_dim = 6,
                       size_t cap_group = 64);

// <pi(gamma) xi, xi> = sum_i |a_i|^2 <gamma, chi_i>, exactly.
CycloNumber positive_definite_fn(const DiagRep& rep, const FdVector& xi, const GroupElement& g);

struct SpectralMeasure {
    std::vector<Character> atoms;
    std::vector<Rat> masses;  // aligned; sums to |xi|^2
};

// Atom at each distinct character with mass the sum of |a_j|^2 over the
// positions carrying it. Masses must land in Q (choose coefficients with
// rational square modulus); the Bochner identity sum mass * <gamma, chi> =
// positive_definite_fn(gamma) is asserted for every group element.
SpectralMeasure spectral_measure(const DiagRep& rep, const FdVector& xi, size_t cap_group = 4096);

struct C1Result {
    bool found = false;
    GroupElement gamma;  // first minimizer in enumeration order
    Rat best;            // exact achieved max coordinate distance
};

// Search for gamma with max_j dist(<gamma, chi_j>, target_j) < eps; on
// failure `best` is the exact optimum, attained at `gamma`.
C1Result c1_search(const DiagRep& rep, const std::vector<Angle>& target, const Rat& eps,
                   size_t cap_group = 4096);

}  // namespace egw
