#pragma once

#include "seplab/poly.hpp"

#include <stdexcept>
#include <string>

namespace seplab {

/// Evaluation at a real pole of a rational function.
class PoleError : public std::domain_error {
  public:
    PoleError(std::string msg, Rational where)
        : std::domain_error(std::move(msg)), location(std::move(where)) {}
    Rational location;
};

/// Reduced rational function: gcd(num, den) = 1 and den monic.  The overall
/// rational constant lives in the numerator, so each function has exactly one
/// representative.
class RatFun {
  public:
    RatFun() : den_(Rational(1)) {}  // zero
    explicit RatFun(Rational c) : num_(std::move(c)), den_(Rational(1)) {}
    explicit RatFun(Poly num) : num_(std::move(num)), den_(Rational(1)) {}
    RatFun(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RatFun derivative() const;
    RatFun inverse() const;

    Rational eval(const Rational& y) const;  // throws PoleError at a pole
    double eval(double y) const;             // IEEE semantics at poles

    /// f(y) = coeff * y^exponent * (1 + O(1/y)) as y -> infinity.
    struct Leading {
        Rational coeff;
        int exponent;
    };
    Leading leading() const;

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const Rational& s, const RatFun& f);
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    std::string to_string(const std::string& var = "y") const;

  private:
    Poly num_, den_;
};

/// f + g*h style helpers used by the hierarchy recursions.
inline RatFun ratfun_y() { return RatFun(Poly::x()); }

}  // namespace seplab
