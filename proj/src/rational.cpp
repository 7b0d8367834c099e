#include "seplab/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace seplab {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (sgn(d) == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(n) / mpq_class(d);  // operator/ canonicalizes
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational::from_double: non-finite input");
    Rational r;
    r.v_ = mpq_class(x);  // exact: binary fraction
    r.v_.canonicalize();
    return r;
}

Rational Rational::from_string(const std::string& s) {
    Rational r;
    if (r.v_.set_str(s, 10) != 0) throw std::invalid_argument("Rational::from_string: bad literal '" + s + "'");
    r.v_.canonicalize();
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

double Rational::to_double() const {
    // mpq_get_d truncates toward zero; do round-to-nearest-even by hand.
    if (is_zero()) return 0.0;
    mpz_class n = num(), d = den();
    const int s = sgn(n);
    n = ::abs(n);
    // Scale so that n/d lands in [2^52, 2^53): then the quotient is the
    // integer significand and the remainder decides the rounding.
    long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    // Now 2^(e-1) <= n/d < 2^(e+1); normalize to exponent shift k = 52 - e or 53 - e.
    long k = 52 - e;
    auto shifted = [&](long kk) {
        mpz_class nn = n, dd = d;
        if (kk >= 0)
            mpz_mul_2exp(nn.get_mpz_t(), nn.get_mpz_t(), static_cast<mp_bitcnt_t>(kk));
        else
            mpz_mul_2exp(dd.get_mpz_t(), dd.get_mpz_t(), static_cast<mp_bitcnt_t>(-kk));
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), nn.get_mpz_t(), dd.get_mpz_t());
        return std::pair<mpz_class, mpz_class>(q, r);
    };
    auto [q, r] = shifted(k);
    while (mpz_sizeinbase(q.get_mpz_t(), 2) < 53) {
        ++k;
        std::tie(q, r) = shifted(k);
    }
    while (mpz_sizeinbase(q.get_mpz_t(), 2) > 53) {
        --k;
        std::tie(q, r) = shifted(k);
    }
    // q has exactly 53 bits; value = q * 2^-k + r/d * 2^-k, 0 <= r < d(scaled).
    mpz_class dd = d;
    if (k < 0) mpz_mul_2exp(dd.get_mpz_t(), dd.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    mpz_class twice_r = 2 * r;
    const int cmp = ::cmp(twice_r, dd);
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    double mant = q.get_d();  // <= 2^53, exact
    return s * std::ldexp(mant, static_cast<int>(-k));
}

std::string Rational::to_string() const { return v_.get_str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r.is_zero() && e < 0) throw std::domain_error("Rational pow: 0^negative");
    mpz_class n, d;
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), a);
    return e > 0 ? Rational(n, d) : Rational(d, n);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.raw(); }

}  // namespace seplab
