#include "seplab/airy.hpp"

#include <cmath>

namespace seplab {

namespace {

using cdouble = std::complex<double>;

// ---- double-double kernel (only what the Maclaurin sums need) ----

struct DD {
    double hi = 0, lo = 0;
};

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& x, const DD& y) {
    DD s = two_sum(x.hi, y.hi);
    return quick_two_sum(s.hi, s.lo + x.lo + y.lo);
}

inline DD dd_sub(const DD& x, const DD& y) { return dd_add(x, {-y.hi, -y.lo}); }

inline DD dd_mul(const DD& x, const DD& y) {
    DD p = two_prod(x.hi, y.hi);
    return quick_two_sum(p.hi, p.lo + x.hi * y.lo + x.lo * y.hi);
}

inline DD dd_mul_d(const DD& x, double d) {
    DD p = two_prod(x.hi, d);
    return quick_two_sum(p.hi, p.lo + x.lo * d);
}

inline DD dd_div_d(const DD& x, double d) {
    const double q1 = x.hi / d;
    DD p = two_prod(q1, d);
    const double q2 = ((x.hi - p.hi) - p.lo + x.lo) / d;
    return quick_two_sum(q1, q2);
}

struct CDD {
    DD re, im;
};

inline CDD cdd_from(const cdouble& z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

inline CDD cdd_add(const CDD& a, const CDD& b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline CDD cdd_mul(const CDD& a, const CDD& b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline CDD cdd_scale(const CDD& a, double num, double den) {
    return {dd_div_d(dd_mul_d(a.re, num), den), dd_div_d(dd_mul_d(a.im, num), den)};
}

inline cdouble cdd_value(const CDD& a) { return {a.re.hi + a.re.lo, a.im.hi + a.im.lo}; }

inline double cdd_mag(const CDD& a) { return std::abs(cdd_value(a)); }

// Ai(0) and -Ai'(0) to double-double precision.
const DD kC1{0.3550280538878172, 2.05233632436212e-17};
const DD kC2{0.2588194037928068, -2.522243111610832e-17};

constexpr double kInvTwoSqrtPi = 0.28209479177387814;
// The Poincare asymptotic series is only ~e^{-|chi|} accurate at the Stokes
// directions, so it meets 1e-10 only from |z| ~ 11 on; the double-double
// Maclaurin sum absorbs the cancellation up to that radius.
constexpr double kSwitchRadius = 11.0;

AiryPair airy_maclaurin(const cdouble& z) {
    // Ai = c1 f - c2 g, Ai' = c1 f' - c2 g'; all four series advance by z^3.
    //   f  = sum c_k z^{3k},      c_{k+1} = c_k / ((3k+2)(3k+3))
    //   g  = sum d_k z^{3k+1},    d_{k+1} = d_k / ((3k+3)(3k+4))
    //   f' = sum 3k c_k z^{3k-1}, v_{j+1} = v_j z^3 (j+1)/(j(3j+2)(3j+3)), v_1 = z^2/2
    //   g' = sum (3k+1) d_k z^{3k}, w_{k+1} = w_k z^3 / ((3k+1)(3k+3))
    const CDD z3 = cdd_mul(cdd_mul(cdd_from(z), cdd_from(z)), cdd_from(z));
    CDD t = cdd_from(1.0), f = t;
    CDD s = cdd_from(z), g = s;
    CDD v = cdd_scale(cdd_mul(cdd_from(z), cdd_from(z)), 1, 2), fp = v;
    CDD w = cdd_from(1.0), gp = w;
    for (int k = 0; k < 400; ++k) {
        const double dk = k, j = k + 1;
        t = cdd_scale(cdd_mul(t, z3), 1.0, (3 * dk + 2) * (3 * dk + 3));
        s = cdd_scale(cdd_mul(s, z3), 1.0, (3 * dk + 3) * (3 * dk + 4));
        v = cdd_scale(cdd_mul(v, z3), j + 1, j * (3 * j + 2) * (3 * j + 3));
        w = cdd_scale(cdd_mul(w, z3), 1.0, (3 * dk + 1) * (3 * dk + 3));
        f = cdd_add(f, t);
        g = cdd_add(g, s);
        fp = cdd_add(fp, v);
        gp = cdd_add(gp, w);
        const double big = std::max({cdd_mag(f), cdd_mag(g), cdd_mag(fp), cdd_mag(gp), 1.0});
        const double m = std::max({cdd_mag(t), cdd_mag(s), cdd_mag(v), cdd_mag(w)});
        if (m < 1e-34 * big) break;
    }
    const CDD mc2{{-kC2.hi, -kC2.lo}, {0, 0}};
    const CDD c1{kC1, {0, 0}};
    CDD ai = cdd_add(cdd_mul(c1, f), cdd_mul(mc2, g));
    CDD dai = cdd_add(cdd_mul(c1, fp), cdd_mul(mc2, gp));
    return {cdd_value(ai), cdd_value(dai)};
}

// Direct asymptotic expansion, |arg z| <= 2pi/3, |z| >= kSwitchRadius.
AiryPair airy_asymptotic(const cdouble& z) {
    const cdouble zh = std::sqrt(z);       // principal
    const cdouble chi = 2.0 / 3.0 * zh * zh * zh;
    const cdouble inv_chi = 1.0 / chi;
    cdouble su(1.0), sv(1.0);
    double uk = 1.0;
    cdouble pw(1.0);
    double prev = 1e300;
    for (int k = 0; k < 60; ++k) {
        const double dk = k;
        uk *= (6 * dk + 1) * (6 * dk + 5) / (72 * (dk + 1));
        const double vk = uk * (6 * (dk + 1) + 1) / (1 - 6 * (dk + 1));
        pw *= -inv_chi;
        const double mag = uk * std::abs(pw);
        if (mag > prev) break;  // past the optimal truncation point
        prev = mag;
        su += uk * pw;
        sv += vk * pw;
        if (mag < 1e-18) break;
    }
    const cdouble q = std::sqrt(zh);       // z^(1/4)
    const cdouble e = std::exp(-chi);
    return {kInvTwoSqrtPi / q * e * su, -kInvTwoSqrtPi * q * e * sv};
}

}  // namespace

AiryPair airy_eval(cdouble z) {
    if (std::abs(z) < kSwitchRadius) return airy_maclaurin(z);
    if (std::abs(std::arg(z)) <= 2.0 * M_PI / 3.0 + 1e-14) return airy_asymptotic(z);
    // rotate into the sector of validity:
    //   Ai(z) = -e^{-2pi i/3} Ai(z e^{-2pi i/3}) - e^{+2pi i/3} Ai(z e^{+2pi i/3})
    const cdouble wp(-0.5, std::sqrt(3.0) / 2.0);   // e^{+2pi i/3}
    const cdouble wm(-0.5, -std::sqrt(3.0) / 2.0);  // e^{-2pi i/3}
    const AiryPair am = airy_asymptotic(z * wm);
    const AiryPair ap = airy_asymptotic(z * wp);
    return {-wm * am.Ai - wp * ap.Ai, -wp * am.dAi - wm * ap.dAi};
}

}  // namespace seplab
