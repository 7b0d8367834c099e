#include "seplab/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace seplab {

namespace {

const Rational kZero(0);

// Integer polynomial layer used only inside gcd.
using ZPoly = std::vector<mpz_class>;  // ascending, trimmed

void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

mpz_class zcontent(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;  // 0 for zero polynomial
}

ZPoly zprimitive(ZPoly p) {
    mpz_class g = zcontent(p);
    if (sgn(g) == 0) return p;
    if (sgn(p.back()) < 0) g = -g;  // normalize leading sign positive
    for (auto& c : p) c /= g;
    return p;
}

// Pseudo-remainder: exactly lc(b)^(deg a - deg b + 1) * a mod b.  The power
// must be exact or the subresultant divisions below stop being integral.
ZPoly zprem(ZPoly a, const ZPoly& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const mpz_class& lb = b.back();
    int remaining = static_cast<int>(a.size()) - 1 - db + 1;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int da = static_cast<int>(a.size()) - 1;
        const mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        --remaining;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        ztrim(a);
    }
    if (remaining > 0 && !a.empty()) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(remaining));
        for (auto& c : a) c *= f;
    }
    return a;
}

ZPoly to_zpoly(const Poly& p) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z(p.coeffs().size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = p.coeffs()[i].num() * (lcm / p.coeffs()[i].den());
    return z;
}

Poly from_zpoly_monic(const ZPoly& z) {
    if (z.empty()) return Poly();
    std::vector<Rational> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i], z.back());
    return Poly(std::move(c));
}

// Subresultant polynomial remainder sequence; returns the last nonzero
// remainder made primitive.
ZPoly zgcd(ZPoly a, ZPoly b) {
    a = zprimitive(std::move(a));
    b = zprimitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() < b.size()) std::swap(a, b);
    mpz_class g = 1, h = 1;
    while (true) {
        const int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
        ZPoly r = zprem(a, b);
        if (r.empty()) return zprimitive(std::move(b));
        if (r.size() == 1) return {mpz_class(1)};
        a = std::move(b);
        // divide r by g*h^delta
        mpz_class ghd = g;
        for (int i = 0; i < delta; ++i) ghd *= h;
        for (auto& c : r) c /= ghd;
        b = std::move(r);
        g = a.back();
        // h = g^delta * h^(1-delta)
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            mpz_class num = 1;
            mpz_pow_ui(num.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_class den = 1;
            mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            h = num / den;
        }
    }
}

}  // namespace

Poly::Poly(Rational c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

Poly Poly::x() { return monomial(Rational(1), 1); }

Poly Poly::monomial(Rational c, int deg) {
    if (c.is_zero()) return Poly();
    std::vector<Rational> v(static_cast<size_t>(deg) + 1);
    v.back() = std::move(c);
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& Poly::leading() const {
    if (c_.empty()) throw std::domain_error("Poly::leading on zero polynomial");
    return c_.back();
}

const Rational& Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
}

Rational Poly::eval(const Rational& y) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
    return acc;
}

double Poly::eval(double y) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + it->to_double();
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = Rational(static_cast<long>(k)) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return Rational(1) / leading() * *this;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
}

Poly operator*(const Rational& s, const Poly& p) {
    if (s.is_zero()) return Poly();
    Poly r(p);
    for (auto& c : r.c_) c *= s;
    return r;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() > 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const Rational a = abs(c);
        if (k == 0 || a != Rational(1)) os << a.to_string();
        if (k > 0) {
            if (a != Rational(1)) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

PolyDivMod divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly divmod: division by zero polynomial");
    Poly r = a;
    std::vector<Rational> q;
    const int db = b.degree();
    if (r.degree() >= db) q.assign(static_cast<size_t>(r.degree() - db) + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= db) {
        const int k = r.degree() - db;
        const Rational c = r.leading() / b.leading();
        q[static_cast<size_t>(k)] = c;
        r -= Poly::monomial(c, k) * b;
    }
    return {Poly(std::move(q)), std::move(r)};
}

bool divides(const Poly& b, const Poly& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    return divmod(a, b).rem.is_zero();
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    return from_zpoly_monic(zgcd(to_zpoly(a), to_zpoly(b)));
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
    std::vector<Poly> out;
    if (p.degree() <= 0) return out;
    Poly a = p.monic();
    Poly g = gcd(a, a.derivative());
    Poly w = divmod(a, g).quot;       // product of distinct factors
    Poly y = divmod(a.derivative(), g).quot;
    Poly z = y - w.derivative();
    while (!w.is_zero() && w.degree() > 0) {
        Poly f = gcd(w, z);
        out.push_back(f.monic());
        w = divmod(w, f).quot;
        z = divmod(z, f).quot - w.derivative();
    }
    return out;
}

}  // namespace seplab
