#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "egw/rational.hpp"

namespace egw {

// A point of the circle in "turns": a rational in [0, 1), always reduced.
// The multiplicative circle exp(2*pi*i*t) is logged additively as t mod 1.
class Angle {
  public:
    Angle() : v_(0) {}
    explicit Angle(Rat v) : v_(std::move(v)) { normalize(); }

    const Rat& value() const { return v_; }

    Angle operator+(const Angle& o) const { return Angle(v_ + o.v_); }
    Angle operator-(const Angle& o) const { return Angle(v_ - o.v_); }
    Angle operator-() const { return Angle(-v_); }
    Angle operator*(const Int& k) const { return Angle(v_ * Rat(k)); }

    bool operator==(const Angle& o) const { return v_ == o.v_; }
    bool operator!=(const Angle& o) const { return v_ != o.v_; }
    bool operator<(const Angle& o) const { return v_ < o.v_; }

    bool is_zero() const { return v_ == 0; }

    // Least q >= 1 with q*this == 0, i.e. the denominator.
    Int order() const { return v_.get_den(); }

    std::string str() const { return rat_str(v_); }

  private:
    void normalize() {
        Rat f = v_ - Rat(mpz_class(v_.get_num() / v_.get_den()));
        if (f < 0)
            f += 1;
        v_ = f;
        v_.canonicalize();
    }
    Rat v_;
};

// Shortest-geodesic distance on the circle, in [0, 1/2].
Rat angle_dist(const Angle& a, const Angle& b);

using TorusPoint = std::vector<Angle>;

// Coordinatewise geodesic distances combined by max.
Rat torus_dist_max(const TorusPoint& x, const TorusPoint& y);

// The k solutions of k*c == a (mod 1), ascending; consecutive roots are 1/k apart.
std::vector<Angle> kth_roots(const Angle& a, const Int& k);

}  // namespace egw
