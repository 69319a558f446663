#include "egw/cyclo.hpp"

#include <map>
#include <sstream>

namespace egw {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    return poly_trim(std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Poly& num, const Poly& den) {
    if (den.empty())
        throw std::invalid_argument("poly_divmod: division by zero polynomial");
    Poly rem = num;
    if (num.size() < den.size())
        return {Poly{}, poly_trim(std::move(rem))};
    Poly quot(num.size() - den.size() + 1, Rat(0));
    const Rat& lead = den.back();
    for (size_t k = quot.size(); k-- > 0;) {
        if (rem.size() < den.size() + k || rem[den.size() - 1 + k] == 0)
            continue;
        Rat c = rem[den.size() - 1 + k] / lead;
        quot[k] = c;
        for (size_t i = 0; i < den.size(); ++i)
            rem[i + k] -= c * den[i];
    }
    return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Poly poly_divexact(const Poly& num, const Poly& den) {
    auto [q, r] = poly_divmod(num, den);
    if (!r.empty())
        throw std::logic_error("poly_divexact: nonzero remainder");
    return q;
}

Poly cyclotomic_poly(unsigned long m) {
    static std::map<unsigned long, Poly> cache;
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    if (m == 0)
        throw std::invalid_argument("cyclotomic_poly: m must be positive");
    // x^m - 1
    Poly num(m + 1, Rat(0));
    num[0] = Rat(-1);
    num[m] = Rat(1);
    Poly result = num;
    for (unsigned long d = 1; d < m; ++d)
        if (m % d == 0)
            result = poly_divexact(result, cyclotomic_poly(d));
    cache[m] = result;
    return result;
}

CycloNumber::CycloNumber(unsigned long m, const Rat& c) : m_(m) {
    if (m == 0)
        throw std::invalid_argument("CycloNumber: conductor must be positive");
    size_t deg = cyclotomic_poly(m).size() - 1;
    coeffs_.assign(deg, Rat(0));
    // deg Phi_1 = 1, so even constants live in a 1-slot vector.
    reduce(Poly{c});
}

CycloNumber CycloNumber::from_coeffs(unsigned long m, std::vector<Rat> coeffs) {
    CycloNumber x(m, Rat(0));
    x.reduce(std::move(coeffs));
    return x;
}

CycloNumber CycloNumber::zeta_pow(unsigned long m, long j, const Rat& scale) {
    long jm = j % static_cast<long>(m);
    if (jm < 0)
        jm += static_cast<long>(m);
    Poly p(static_cast<size_t>(jm) + 1, Rat(0));
    p[static_cast<size_t>(jm)] = scale;
    return from_coeffs(m, std::move(p));
}

CycloNumber CycloNumber::from_angle(unsigned long m, const Angle& a) {
    Int den = a.value().get_den();
    if (Int(m) % den != 0)
        throw std::invalid_argument("from_angle: angle order does not divide conductor");
    Int j = a.value().get_num() * (Int(m) / den);
    return zeta_pow(m, j.get_si());
}

void CycloNumber::reduce(Poly raw) {
    const Poly phi = cyclotomic_poly(m_);
    size_t deg = phi.size() - 1;
    Poly rem = poly_divmod(poly_trim(std::move(raw)), phi).second;
    coeffs_.assign(deg, Rat(0));
    for (size_t i = 0; i < rem.size(); ++i)
        coeffs_[i] = rem[i];
}

void CycloNumber::check_conductor(const CycloNumber& o) const {
    if (m_ != o.m_)
        throw std::invalid_argument("CycloNumber: conductor mismatch");
}

bool CycloNumber::is_zero() const {
    for (const Rat& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool CycloNumber::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

Rat CycloNumber::rational_value() const {
    if (!is_rational())
        throw std::logic_error("CycloNumber: not a rational value");
    return coeffs_.empty() ? Rat(0) : coeffs_[0];
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
    check_conductor(o);
    CycloNumber out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] += o.coeffs_[i];
    return out;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
    check_conductor(o);
    CycloNumber out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        out.coeffs_[i] -= o.coeffs_[i];
    return out;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber out = *this;
    for (Rat& c : out.coeffs_)
        c = -c;
    return out;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
    check_conductor(o);
    CycloNumber out(m_, Rat(0));
    out.reduce(poly_mul(poly_trim(coeffs_), poly_trim(o.coeffs_)));
    return out;
}

bool CycloNumber::operator==(const CycloNumber& o) const {
    return m_ == o.m_ && coeffs_ == o.coeffs_;
}

// Extended Euclid in Q[x] against Phi_m; Phi_m irreducible makes every
// nonzero residue invertible.
CycloNumber CycloNumber::inverse() const {
    if (is_zero())
        throw std::domain_error("CycloNumber: inverse of zero");
    Poly r0 = cyclotomic_poly(m_), r1 = poly_trim(coeffs_);
    Poly t0{}, t1{Rat(1)};
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd, a nonzero constant; t0 * this == r0 (mod Phi_m).
    if (r0.size() != 1)
        throw std::logic_error("CycloNumber: Phi_m not coprime to nonzero element");
    Rat inv_c = Rat(1) / r0[0];
    for (Rat& c : t0)
        c *= inv_c;
    CycloNumber out(m_, Rat(0));
    out.reduce(std::move(t0));
    return out;
}

CycloNumber CycloNumber::conj() const {
    // Substitute zeta -> zeta^{m-1}.
    CycloNumber out(m_, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out = out + zeta_pow(m_, static_cast<long>((m_ - 1) * i), coeffs_[i]);
    return out;
}

std::string CycloNumber::str() const {
    std::ostringstream os;
    os << "[m=" << m_;
    for (const Rat& c : coeffs_)
        os << " " << rat_str(c);
    os << "]";
    return os.str();
}

CycloNumber cyclo_det(std::vector<std::vector<CycloNumber>> a) {
    size_t n = a.size();
    if (n == 0)
        throw std::invalid_argument("cyclo_det: empty matrix");
    unsigned long m = a[0][0].conductor();
    for (const auto& row : a) {
        if (row.size() != n)
            throw std::invalid_argument("cyclo_det: matrix not square");
        for (const auto& x : row)
            if (x.conductor() != m)
                throw std::invalid_argument("cyclo_det: conductor mismatch");
    }
    CycloNumber det(m, Rat(1));
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero())
            ++pivot;
        if (pivot == n)
            return CycloNumber(m, Rat(0));
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        CycloNumber inv = a[col][col].inverse();
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero())
                continue;
            CycloNumber factor = a[r][col] * inv;
            for (size_t c = col; c < n; ++c)
                a[r][c] = a[r][c] - factor * a[col][c];
        }
    }
    return det;
}

}  // namespace egw
