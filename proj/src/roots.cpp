#include "seplab/roots.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace seplab {

namespace {

using ZPoly = std::vector<mpz_class>;  // ascending, trimmed

void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

ZPoly zderivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = mpz_class(static_cast<long>(k)) * p[k];
    return d;
}

ZPoly zprimitive(ZPoly p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (sgn(g) == 0) return p;
    for (auto& c : p) c /= g;
    return p;
}

ZPoly to_zpoly(const Poly& p) {
    mpz_class lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z(p.coeffs().size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = p.coeffs()[i].num() * (lcm / p.coeffs()[i].den());
    return z;
}

// Positive-scaled pseudo-remainder: returns c * (a mod b) with c > 0.
ZPoly zprem_pos(ZPoly a, const ZPoly& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const mpz_class lb = b.back();
    const mpz_class alb = ::abs(lb);
    const int slb = sgn(lb);
    while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
        const int da = static_cast<int>(a.size()) - 1;
        const mpz_class la = a.back();
        for (auto& c : a) c *= alb;
        const mpz_class f = slb < 0 ? mpz_class(-la) : la;
        for (int i = 0; i <= db; ++i) a[static_cast<size_t>(da - db + i)] -= f * b[i];
        ztrim(a);
    }
    return a;
}

// Exact sign of p(u/v) for v > 0, via homogeneous evaluation.
int zsign_at(const ZPoly& p, const mpz_class& u, const mpz_class& v) {
    if (p.empty()) return 0;
    mpz_class acc = 0, vpow = 1;
    // sum c_k u^k v^(n-k): Horner from the top in u, multiplying v powers up
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * u + *it * vpow;
        vpow *= v;
    }
    // one vpow too many; harmless for the sign
    return sgn(acc);
}

struct SturmChain {
    std::vector<ZPoly> chain;

    explicit SturmChain(const Poly& squarefree) {
        ZPoly s0 = zprimitive(to_zpoly(squarefree));
        ZPoly s1 = zprimitive(zderivative(s0));
        chain.push_back(s0);
        if (s1.empty()) return;
        chain.push_back(s1);
        while (true) {
            ZPoly r = zprem_pos(chain[chain.size() - 2], chain.back());
            if (r.empty()) break;
            for (auto& c : r) c = -c;
            chain.push_back(zprimitive(std::move(r)));
            if (chain.back().size() == 1) break;
        }
    }

    int variations(const Rational& x) const {
        const mpz_class& u = x.num();
        const mpz_class& v = x.den();
        int var = 0, prev = 0;
        for (const auto& p : chain) {
            const int s = zsign_at(p, u, v);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    }

    // distinct roots in (a, b]
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
};

Rational cauchy_bound(const Poly& p) {
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) m = std::max(m, abs(p.coeff(k)));
    return Rational(1) + m / abs(p.leading());
}

struct Isolator {
    const Poly& f;          // squarefree
    SturmChain sturm;
    Rational width;
    std::vector<RootBox> out;

    Isolator(const Poly& sf, Rational w) : f(sf), sturm(sf), width(std::move(w)) {}

    // Shrink [lo, hi] (containing exactly one root, f nonzero at endpoints)
    // down to the requested width by sign bisection.
    RootBox refine(Rational lo, Rational hi) {
        int slo = f.eval(lo).sign();
        while (hi - lo > width) {
            const Rational mid = Rational(1, 2) * (lo + hi);
            const int smid = f.eval(mid).sign();
            if (smid == 0) return exact_root_box(mid, lo, hi);
            if (smid == slo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return {lo, hi, 1};
    }

    // mid is an exact rational root; the only root in [lo, hi].
    RootBox exact_root_box(const Rational& mid, const Rational& lo, const Rational& hi) {
        Rational h = Rational(1, 2) * width;
        Rational a = std::max(lo, mid - h), b = std::min(hi, mid + h);
        // endpoints cannot be roots: the lone root is mid, strictly inside
        while (!(a < mid) || !(mid < b)) {  // degenerate clip; widen within [lo,hi]
            h = Rational(1, 2) * h;
            a = std::max(lo, mid - h);
            b = std::min(hi, mid + h);
        }
        return {a, b, 1};
    }

    void isolate(const Rational& a, const Rational& b, int n) {
        if (n == 0) return;
        if (n == 1) {
            // (a, b] holds one root; make a closed box with nonzero endpoints
            Rational lo = a, hi = b;
            if (f.eval(hi).sign() == 0) {
                out.push_back(exact_root_box(hi, lo, hi + width));
                return;
            }
            out.push_back(refine(lo, hi));
            return;
        }
        Rational mid = Rational(1, 2) * (a + b);
        if (f.eval(mid).sign() == 0) {
            // split around the exact root at mid
            Rational eta = (b - a) * Rational(1, 1 << 20);
            while (sturm.count(mid - eta, mid + eta) != 1) eta = Rational(1, 2) * eta;
            out.push_back(exact_root_box(mid, mid - eta, mid + eta));
            isolate(a, mid - eta, sturm.count(a, mid - eta));
            isolate(mid + eta, b, sturm.count(mid + eta, b));
            return;
        }
        const int nl = sturm.count(a, mid);
        isolate(a, mid, nl);
        isolate(mid, b, n - nl);
    }

    std::vector<RootBox> run() {
        if (f.degree() < 1) return {};
        const Rational m = cauchy_bound(f);
        isolate(-m, m, sturm.count(-m, m));
        std::sort(out.begin(), out.end(), [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
        return out;
    }
};

}  // namespace

int sturm_count(const Poly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
    const auto sf = squarefree_decomposition(p);
    Poly radical(Rational(1));
    for (const auto& f : sf) radical = radical * f;
    return SturmChain(radical).count(a, b);
}

std::vector<RootBox> poly_real_roots(const Poly& p, const Rational& width) {
    if (p.is_zero()) throw std::domain_error("poly_real_roots: zero polynomial");
    if (!(Rational(0) < width)) throw std::domain_error("poly_real_roots: width must be positive");

    std::vector<RootBox> boxes;
    const auto factors = squarefree_decomposition(p);
    for (size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() < 1) continue;
        Isolator iso(factors[k], width);
        for (RootBox b : iso.run()) {
            b.multiplicity = static_cast<int>(k) + 1;
            boxes.push_back(std::move(b));
        }
    }
    std::sort(boxes.begin(), boxes.end(), [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });

    // Roots of distinct square-free factors are distinct, but their boxes may
    // overlap; shrink until pairwise disjoint.
    bool again = true;
    while (again) {
        again = false;
        for (size_t i = 0; i + 1 < boxes.size(); ++i) {
            if (boxes[i].hi < boxes[i + 1].lo) continue;
            again = true;
            for (size_t j : {i, i + 1}) {
                const Poly& f = factors[static_cast<size_t>(boxes[j].multiplicity) - 1];
                Isolator iso(f, Rational(1, 2) * (boxes[j].hi - boxes[j].lo));
                const int mult = boxes[j].multiplicity;
                boxes[j] = iso.refine(boxes[j].lo, boxes[j].hi);
                boxes[j].multiplicity = mult;
            }
        }
        std::sort(boxes.begin(), boxes.end(), [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
    }
    return boxes;
}

double root_set_distance(double y, const std::vector<RootBox>& boxes) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : boxes) d = std::min(d, std::abs(y - b.mid()));
    return d;
}

}  // namespace seplab
