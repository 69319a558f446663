#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "egw/angle.hpp"
#include "egw/rational.hpp"

namespace egw {

// Dense polynomial over Q, coefficient of x^i at index i. Trailing zeros trimmed.
using Poly = std::vector<Rat>;

Poly poly_trim(Poly p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
// Exact division; throws if the remainder is nonzero.
Poly poly_divexact(const Poly& num, const Poly& den);
// Division with remainder: returns {quot, rem}.
std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den);

// The m-th cyclotomic polynomial, computed by dividing x^m - 1 by the
// cyclotomic polynomials of the proper divisors of m.
Poly cyclotomic_poly(unsigned long m);

// Element of the cyclotomic field Q(zeta_m), stored as a rational polynomial
// in zeta_m of degree < deg Phi_m. One conductor per computation.
class CycloNumber {
  public:
    CycloNumber() : m_(1), coeffs_{} {}
    // Rational constant in Q(zeta_m).
    CycloNumber(unsigned long m, const Rat& c);
    // zeta_m^j scaled by c.
    static CycloNumber zeta_pow(unsigned long m, long j, const Rat& scale = Rat(1));
    // Embed an angle of order dividing m as the corresponding root of unity.
    static CycloNumber from_angle(unsigned long m, const Angle& a);
    static CycloNumber from_coeffs(unsigned long m, std::vector<Rat> coeffs);

    unsigned long conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    // Nonzero constant term with all higher coefficients zero.
    bool is_rational() const;
    Rat rational_value() const;  // throws if !is_rational()

    CycloNumber operator+(const CycloNumber& o) const;
    CycloNumber operator-(const CycloNumber& o) const;
    CycloNumber operator-() const;
    CycloNumber operator*(const CycloNumber& o) const;
    bool operator==(const CycloNumber& o) const;

    CycloNumber inverse() const;  // throws on zero
    // Complex conjugate: zeta -> zeta^{-1}.
    CycloNumber conj() const;
    // a * conj(a).
    CycloNumber norm_sq() const { return *this * conj(); }

    std::string str() const;

  private:
    void reduce(Poly raw);
    void check_conductor(const CycloNumber& o) const;

    unsigned long m_;
    std::vector<Rat> coeffs_;  // length deg Phi_m
};

// Exact determinant over Q(zeta_m) by fraction-producing Gaussian elimination.
CycloNumber cyclo_det(std::vector<std::vector<CycloNumber>> a);

}  // namespace egw
