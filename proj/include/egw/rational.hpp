#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace egw {

using Int = mpz_class;
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a/b" or "a", reduced on the way in.
Rat parse_rat(const std::string& s);

// Strict form: rejects unreduced fractions and non-positive denominators.
// Used by the schema validator; parse_rat is the forgiving variant.
std::optional<std::string> check_reduced_fraction(const std::string& s);

std::string rat_str(const Rat& q);

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace egw
