#pragma once

#include "seplab/rational.hpp"

#include <string>
#include <vector>

namespace seplab {

/// Dense univariate polynomial over Rational, coefficients in ascending
/// degree.  The zero polynomial has an empty coefficient list; otherwise the
/// leading coefficient is nonzero.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Rational c);
    explicit Poly(std::vector<Rational> ascending);
    static Poly x();                     // the monomial y
    static Poly monomial(Rational c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const Rational& leading() const;
    const Rational& coeff(int k) const;  // 0 outside range
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& y) const;
    double eval(double y) const;

    Poly derivative() const;
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string(const std::string& var = "y") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
struct PolyDivMod {
    Poly quot, rem;
};
PolyDivMod divmod(const Poly& a, const Poly& b);

/// True when b divides a exactly.
bool divides(const Poly& b, const Poly& a);

/// Monic gcd via subresultant PRS on the integer primitive parts (controls
/// coefficient growth; plain rational Euclid blows up at hierarchy degrees).
Poly gcd(const Poly& a, const Poly& b);

/// Square-free decomposition (Yun): p = lc * prod f_k^k with f_k square-free,
/// pairwise coprime, monic.  Entry k of the result is f_{k+1}.
std::vector<Poly> squarefree_decomposition(const Poly& p);

}  // namespace seplab
