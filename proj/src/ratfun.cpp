#include "seplab/ratfun.hpp"

namespace seplab {

RatFun::RatFun(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly(Rational(1));
        return;
    }
    const Poly g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).quot;
        den = divmod(den, g).quot;
    }
    const Rational lc = den.leading();
    num_ = Rational(1) / lc * num;
    den_ = Rational(1) / lc * den;
}

RatFun RatFun::derivative() const {
    // quotient rule; the constructor reduces
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
    return RatFun(den_, num_);
}

Rational RatFun::eval(const Rational& y) const {
    const Rational d = den_.eval(y);
    if (d.is_zero()) throw PoleError("RatFun: evaluation at a pole", y);
    return num_.eval(y) / d;
}

double RatFun::eval(double y) const { return num_.eval(y) / den_.eval(y); }

RatFun::Leading RatFun::leading() const {
    if (is_zero()) throw std::domain_error("RatFun::leading on zero function");
    return {num_.leading() / den_.leading(), num_.degree() - den_.degree()};
}

RatFun RatFun::operator-() const {
    RatFun r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun operator*(const Rational& s, const RatFun& f) { return RatFun(s * f.num_, f.den_); }

std::string RatFun::to_string(const std::string& var) const {
    if (den_.degree() == 0) return num_.to_string(var);
    return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

}  // namespace seplab
