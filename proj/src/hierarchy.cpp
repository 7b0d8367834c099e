#include "seplab/hierarchy.hpp"

#include <mutex>

namespace seplab {

namespace {

const Rational kSixth(1, 6);
const Rational kHalf(1, 2);

Rational floor_rat(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return Rational(q, mpz_class(1));
}

Rational ceil_rat(const Rational& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return Rational(q, mpz_class(1));
}

Rational simplest_pos(const Rational& lo, const Rational& hi) {
    const Rational c = ceil_rat(lo);
    if (c <= hi) return c;
    const Rational n = floor_rat(lo);
    return n + Rational(1) / simplest_pos(Rational(1) / (hi - n), Rational(1) / (lo - n));
}

}  // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("simplest_rational_in: empty interval");
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_pos(-hi, -lo);
    return simplest_pos(lo, hi);
}

Hierarchy::Hierarchy(int bound, Rational isolation_width)
    : bound_(bound), width_(std::move(isolation_width)) {
    if (bound_ < 0) throw std::invalid_argument("Hierarchy: negative bound");
    if (!(Rational(0) < width_)) throw std::invalid_argument("Hierarchy: isolation width must be positive");
}

std::pair<RatFun, RatFun> Hierarchy::backlund_up(const RatFun& U, const RatFun& V) {
    (void)V;
    const RatFun Up = U.derivative();
    RatFun Unew = -kSixth * (ratfun_y() * U) - (Up * Up) / U + kHalf * Up.derivative();
    return {std::move(Unew), U.inverse()};
}

std::pair<RatFun, RatFun> Hierarchy::backlund_down(const RatFun& U, const RatFun& V) {
    (void)U;
    const RatFun Vp = V.derivative();
    RatFun Vnew = kHalf * Vp.derivative() - (Vp * Vp) / V - kSixth * (ratfun_y() * V);
    return {V.inverse(), std::move(Vnew)};
}

HierarchyEntry Hierarchy::make_entry(int m, RatFun U, RatFun V) const {
    HierarchyEntry e;
    e.m = m;
    e.W = Rational(-3) * U.derivative();
    e.Z = Rational(3) * V.derivative();
    e.H = kSixth * (e.W * e.Z) - Rational(3, 2) * (U * U * V * V) - kHalf * (ratfun_y() * U * V);
    if (U.num().degree() >= 1) e.zerosU = poly_real_roots(U.num(), width_);
    if (U.den().degree() >= 1) e.polesU = poly_real_roots(U.den(), width_);
    if (V.num().degree() >= 1) e.zerosV = poly_real_roots(V.num(), width_);
    e.U = std::move(U);
    e.V = std::move(V);
    return e;
}

const HierarchyEntry& Hierarchy::entry(int m) const {
    if (m > bound_ || m < -bound_)
        throw HierarchyError("hierarchy index " + std::to_string(m) + " exceeds bound " + std::to_string(bound_));
    {
        std::shared_lock lock(mu_);
        auto it = cache_.find(m);
        if (it != cache_.end()) return *it->second;
    }
    std::unique_lock lock(mu_);
    if (cache_.find(0) == cache_.end())
        cache_[0] = std::make_shared<HierarchyEntry>(
            make_entry(0, RatFun(Rational(1)), -kSixth * ratfun_y()));
    // walk outward from the nearest cached index toward m
    const int dir = m >= 0 ? 1 : -1;
    int k = 0;
    for (int j = m; j != 0; j -= dir)
        if (cache_.count(j)) {
            k = j;
            break;
        }
    while (k != m) {
        const HierarchyEntry& cur = *cache_.at(k);
        auto [U, V] = dir > 0 ? backlund_up(cur.U, cur.V) : backlund_down(cur.U, cur.V);
        k += dir;
        cache_[k] = std::make_shared<HierarchyEntry>(make_entry(k, std::move(U), std::move(V)));
    }
    return *cache_.at(m);
}

void Hierarchy::seed(HierarchyEntry e) {
    if (e.m > bound_ || e.m < -bound_) throw HierarchyError("seed: index exceeds bound");
    std::unique_lock lock(mu_);
    cache_[e.m] = std::make_shared<HierarchyEntry>(std::move(e));
}

BEntries Hierarchy::b_entries(int m) const {
    const HierarchyEntry& e = entry(m);
    return {Rational(2) * (e.H * e.U) - e.U.derivative(), e.V.derivative() - Rational(2) * (e.H * e.V)};
}

Rational Hierarchy::lambda_check(int m) const {
    const HierarchyEntry& e = entry(m);
    const RatFun lam = e.V * e.U.derivative() - e.U * e.V.derivative();
    if (!lam.is_constant() && !lam.is_zero())
        throw HierarchyError("hierarchy corruption: V U' - U V' is not constant at m=" + std::to_string(m));
    const Rational value = lam.is_zero() ? Rational(0) : lam.num().coeff(0);
    if (value != kSixth - Rational(m, 3))
        throw HierarchyError("hierarchy corruption: wrong first integral at m=" + std::to_string(m));
    return value;
}

namespace {

// Cleared-denominator residual of f'' + 2 f^2 g + (y/3) f with f = n/d,
// g = ng/d (the hierarchy pair shares its monic denominator).  Working at
// the polynomial level skips the gcd reductions, which dominate at high m.
Poly coupled_residual_num(const Poly& n, const Poly& ng, const Poly& d) {
    const Poly dp = d.derivative();
    const Poly np = n.derivative();
    // (n/d)'' = [(n'' d - n d'') d - 2 d' (n' d - n d')] / d^3
    Poly num = (n.derivative().derivative() * d - n * d.derivative().derivative()) * d -
               Rational(2) * (dp * (np * d - n * dp));
    num += Rational(2) * (n * n * ng);
    num += Rational(1, 3) * (Poly::x() * n * d * d);
    return num;
}

// Cleared-denominator residual of P'' - 2P^3 - (2/3) y P + (2/3) alpha with
// P = p/q in lowest terms; the common denominator is q^3.
Poly log_residual_num(const Poly& p, const Poly& q, const Rational& alpha) {
    const Poly pp = p.derivative(), qp = q.derivative();
    Poly num = (p.derivative().derivative() * q - p * q.derivative().derivative()) * q -
               Rational(2) * (qp * (pp * q - p * qp));
    num -= Rational(2) * (p * p * p);
    num -= Rational(2, 3) * (Poly::x() * p * q * q);
    num += Rational(2, 3) * alpha * (q * q * q);
    return num;
}

}  // namespace

Hierarchy::Residuals Hierarchy::pii_residuals(int m) const {
    const HierarchyEntry& e = entry(m);
    if (e.U.den() != e.V.den())
        throw HierarchyError("hierarchy corruption: U and V denominators differ at m=" + std::to_string(m));
    Residuals r;
    const Poly d3 = e.U.den() * e.U.den() * e.U.den();
    r.coupledU = RatFun(coupled_residual_num(e.U.num(), e.V.num(), e.U.den()), d3);
    r.coupledV = RatFun(coupled_residual_num(e.V.num(), e.U.num(), e.V.den()), d3);
    const RatFun P = e.U.derivative() / e.U;
    const RatFun Q = e.V.derivative() / e.V;
    r.logU = RatFun(log_residual_num(P.num(), P.den(), Rational(m)),
                    P.den() * P.den() * P.den());
    r.logV = RatFun(log_residual_num(Q.num(), Q.den(), Rational(-(m - 1))),
                    Q.den() * Q.den() * Q.den());
    return r;
}

Rational Hierarchy::pole_residue(int m, const RootBox& box) const {
    const HierarchyEntry& e = entry(m);
    const Poly& den = e.U.den();
    if (den.degree() < 1) throw HierarchyError("pole_residue: U_m has no poles at m=" + std::to_string(m));
    // Certify a rational pole location by testing the simplest rational in a
    // refined sub-box; refuse otherwise (the residue is then irrational).
    Rational lo = box.lo, hi = box.hi;
    if (sturm_count(den, lo, hi) != 1)
        throw HierarchyError("pole_residue: box does not isolate a pole of U_m");
    auto residue_at = [&](const Rational& y0) {
        const Rational dp = den.derivative().eval(y0);
        if (dp.is_zero()) throw HierarchyError("pole_residue: pole is not simple");
        return e.U.num().eval(y0) / dp;
    };
    for (int pass = 0; pass < 64; ++pass) {
        const Rational cand = simplest_rational_in(lo, hi);
        if (den.eval(cand).is_zero()) return residue_at(cand);
        // shrink toward the root
        const Rational mid = kHalf * (lo + hi);
        const int smid = den.eval(mid).sign();
        if (smid == 0) return residue_at(mid);
        if (smid == den.eval(lo).sign())
            lo = mid;
        else
            hi = mid;
    }
    throw HierarchyError("pole_residue: pole location is not rational; use residue_pairing_holds");
}

bool Hierarchy::residue_pairing_holds(int m) const {
    const HierarchyEntry& e = entry(m);
    if (e.U.den() != e.V.den()) return false;  // poles must coincide, same monic denominator
    const Poly& den = e.U.den();
    if (den.degree() < 1) return true;
    const Poly dp = den.derivative();
    // simple poles with residues k and -1/k  <=>  numU*numV + den'^2 = 0 mod den
    return divides(den, e.U.num() * e.V.num() + dp * dp);
}

ConfinementCert Hierarchy::confinement_check(int m, const RootBox& box) const {
    const HierarchyEntry& e = entry(m);
    const Poly& den = e.U.den();
    if (den.degree() < 1 || sturm_count(den, box.lo, box.hi) != 1)
        throw HierarchyError("confinement_check: box does not isolate a pole of U_m");
    const RatFun& Vnext = entry(m + 1).V;
    const RatFun& Uprev = entry(m - 1).U;
    // finite: no pole of the neighbors in the box
    for (const RatFun* f : {&Vnext, &Uprev})
        if (f->den().degree() >= 1 && sturm_count(f->den(), box.lo, box.hi) != 0)
            throw HierarchyError("confinement violated: neighbor entry has a pole at the point");
    // simple zero at every pole of U_m: den | num, cofactor coprime to den
    for (const RatFun* f : {&Vnext, &Uprev}) {
        if (!divides(den, f->num()))
            throw HierarchyError("confinement violated: neighbor entry does not vanish on the pole set");
        const Poly cofactor = divmod(f->num(), den).quot;
        if (gcd(cofactor, den).degree() > 0)
            throw HierarchyError("confinement violated: zero is not simple");
    }
    // sign of the derivative at the isolated point: constant over the box once
    // the derivative has no root inside
    auto deriv_sign = [&](const RatFun& f) {
        RatFun fp = f.derivative();
        Rational lo = box.lo, hi = box.hi;
        while (!fp.num().is_zero() && fp.num().degree() >= 1 && sturm_count(fp.num(), lo, hi) != 0) {
            const Rational mid = kHalf * (lo + hi);
            if (den.eval(mid).is_zero()) {  // landed on the (rational) pole
                return fp.eval(mid).sign();
            }
            if (den.eval(mid).sign() == den.eval(lo).sign())
                lo = mid;
            else
                hi = mid;
        }
        return fp.eval(kHalf * (lo + hi)).sign();
    };
    return {deriv_sign(Vnext), deriv_sign(Uprev)};
}

}  // namespace seplab
