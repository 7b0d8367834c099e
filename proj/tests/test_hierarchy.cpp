#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seplab/hierarchy.hpp"

#include <thread>

using namespace seplab;

namespace {

Poly from_ints(std::initializer_list<long> asc) {
    std::vector<Rational> c;
    for (long v : asc) c.emplace_back(v);
    return Poly(std::move(c));
}

const Hierarchy& shared() {
    static Hierarchy h(8);
    return h;
}

}  // namespace

TEST_CASE("base entries and first steps") {
    const auto& h = shared();
    CHECK(h.entry(0).U == RatFun(Rational(1)));
    CHECK(h.entry(0).V == RatFun(Poly(std::vector<Rational>{Rational(0), Rational(-1, 6)})));

    // U_1 = -y/6, V_1 = 1
    CHECK(h.entry(1).U == h.entry(0).V);
    CHECK(h.entry(1).V == RatFun(Rational(1)));

    // U_2 = (y^3+6)/(36y), V_2 = -6/y
    CHECK(h.entry(2).U == RatFun(from_ints({6, 0, 0, 1}), from_ints({0, 36})));
    CHECK(h.entry(2).V == RatFun(from_ints({-6}), from_ints({0, 1})));

    // one backward step: U_{-1} = -6/y, V_{-1} = (y^3+6)/(36y)
    CHECK(h.entry(-1).U == RatFun(from_ints({-6}), from_ints({0, 1})));
    CHECK(h.entry(-1).V == RatFun(from_ints({6, 0, 0, 1}), from_ints({0, 36})));

    CHECK_THROWS_AS(h.entry(9), HierarchyError);
}

TEST_CASE("structural invariants W = -3U', Z = 3V'") {
    const auto& h = shared();
    for (int m = -4; m <= 4; ++m) {
        CHECK(h.entry(m).W == Rational(-3) * h.entry(m).U.derivative());
        CHECK(h.entry(m).Z == Rational(3) * h.entry(m).V.derivative());
    }
}

TEST_CASE("hamiltonian values") {
    const auto& h = shared();
    const RatFun y2over24(Poly(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 24)}));
    CHECK(h.hamiltonian(0) == y2over24);
    CHECK(h.hamiltonian(1) == y2over24);
    // H_2 has a simple pole at y = 0
    const RatFun H2 = h.hamiltonian(2);
    CHECK(H2.den().eval(Rational(0)).is_zero());
    CHECK(!H2.den().derivative().eval(Rational(0)).is_zero());
}

TEST_CASE("b entries match both algebraic routes") {
    const auto& h = shared();
    // m=0: B12 = y^2/12, B21 = -1/6 + y^3/72
    auto b0 = h.b_entries(0);
    CHECK(b0.B12 == RatFun(Poly(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 12)})));
    CHECK(b0.B21 == RatFun(Poly(std::vector<Rational>{Rational(-1, 6), Rational(0), Rational(0), Rational(1, 72)})));
    // m=1: B12 = 1/6 - y^3/72
    auto b1 = h.b_entries(1);
    CHECK(b1.B12 == RatFun(Poly(std::vector<Rational>{Rational(1, 6), Rational(0), Rational(0), Rational(-1, 72)})));
    // (1/3)W + 2HU and (1/3)Z - 2HV give the same entries
    for (int m = -3; m <= 3; ++m) {
        const auto& e = h.entry(m);
        auto b = h.b_entries(m);
        CHECK(b.B12 == Rational(1, 3) * e.W + Rational(2) * (e.H * e.U));
        CHECK(b.B21 == Rational(1, 3) * e.Z - Rational(2) * (e.H * e.V));
    }
}

TEST_CASE("first integral lambda_m = 1/6 - m/3") {
    const auto& h = shared();
    CHECK(h.lambda_check(0) == Rational(1, 6));
    CHECK(h.lambda_check(1) == Rational(-1, 6));
    CHECK(h.lambda_check(-2) == Rational(5, 6));
    for (int m = -8; m <= 8; ++m) CHECK(h.lambda_check(m) == Rational(1, 6) - Rational(m, 3));
}

TEST_CASE("system residuals vanish identically") {
    const auto& h = shared();
    for (int m : {0, 3, -4}) {
        auto r = h.pii_residuals(m);
        CHECK(r.coupledU.is_zero());
        CHECK(r.coupledV.is_zero());
        CHECK(r.logU.is_zero());
        CHECK(r.logV.is_zero());
    }
}

TEST_CASE("leading behavior follows (-y/6)^m") {
    const auto& h = shared();
    for (int m = -8; m <= 8; ++m) {
        auto lu = h.entry(m).U.leading();
        CHECK(lu.coeff == pow(Rational(-1, 6), m));
        CHECK(lu.exponent == m);
        auto lv = h.entry(m).V.leading();
        CHECK(lv.coeff == pow(Rational(-1, 6), 1 - m));
        CHECK(lv.exponent == 1 - m);
    }
}

TEST_CASE("backward then forward reproduces the entry exactly") {
    const auto& h = shared();
    for (int m = -5; m <= 5; ++m) {
        const auto& e = h.entry(m);
        auto down = Hierarchy::backlund_down(e.U, e.V);
        auto up = Hierarchy::backlund_up(down.first, down.second);
        CHECK(up.first == e.U);
        CHECK(up.second == e.V);
    }
}

TEST_CASE("V_{m+1} U_m = 1 and pole sets interlock") {
    const auto& h = shared();
    for (int m = -6; m <= 6; ++m) {
        CHECK((h.entry(m + 1).V * h.entry(m).U) == RatFun(Rational(1)));
        // poles of U and V coincide: same monic denominator
        CHECK(h.entry(m).U.den() == h.entry(m).V.den());
    }
}

TEST_CASE("all poles are simple") {
    const auto& h = shared();
    for (int m = -6; m <= 6; ++m)
        for (const auto& b : h.entry(m).polesU) CHECK(b.multiplicity == 1);
}

TEST_CASE("pole residues at the rational pole y=0") {
    const auto& h = shared();
    // U_2 = 1/(6y) + y^2/36 near 0
    const auto& e2 = h.entry(2);
    REQUIRE(e2.polesU.size() == 1);
    CHECK(h.pole_residue(2, e2.polesU[0]) == Rational(1, 6));
    // V_2 = -6/y: residue -6 = -1/(1/6); check via the m where V is the U: U_{-1} = -6/y
    const auto& em1 = h.entry(-1);
    REQUIRE(em1.polesU.size() == 1);
    CHECK(h.pole_residue(-1, em1.polesU[0]) == Rational(-6));
    // box not isolating a pole
    RootBox off{Rational(5), Rational(6), 1};
    CHECK_THROWS_AS(h.pole_residue(2, off), HierarchyError);
}

TEST_CASE("residue pairing certificate holds for all |m| <= 6") {
    const auto& h = shared();
    for (int m = -6; m <= 6; ++m) CHECK(h.residue_pairing_holds(m));
}

TEST_CASE("irrational pole refuses an exact rational residue") {
    const auto& h = shared();
    // U_3 has poles at the roots of y^3 + 6 (only real one is irrational)
    const auto& e3 = h.entry(3);
    REQUIRE(!e3.polesU.empty());
    CHECK_THROWS_AS(h.pole_residue(3, e3.polesU[0]), HierarchyError);
}

TEST_CASE("singularity confinement at y=0") {
    const auto& h = shared();
    // m=2, pole at 0: V_3(0)=0 simple, U_1(0)=0 simple
    auto c2 = h.confinement_check(2, h.entry(2).polesU[0]);
    // V_3 = 36y/(y^3+6): derivative at 0 is 36/6 = 6 > 0; U_1 = -y/6: derivative -1/6 < 0
    CHECK(c2.signVnext == 1);
    CHECK(c2.signUprev == -1);
    // m=-1, pole at 0: V_0(0)=0, U_{-2}(0)=0 both simple
    auto cm1 = h.confinement_check(-1, h.entry(-1).polesU[0]);
    CHECK(cm1.signVnext == -1);  // V_0 = -y/6
    CHECK(cm1.signUprev != 0);
    // a box without a pole errors
    RootBox off{Rational(7), Rational(8), 1};
    CHECK_THROWS_AS(h.confinement_check(2, off), HierarchyError);
}

TEST_CASE("confinement across every real pole, |m| <= 5") {
    const auto& h = shared();
    for (int m = -5; m <= 5; ++m)
        for (const auto& box : h.entry(m).polesU) {
            auto cert = h.confinement_check(m, box);
            CHECK(cert.signVnext != 0);
            CHECK(cert.signUprev != 0);
        }
}

TEST_CASE("zeros of U_{m+1} are poles of V_m and vice versa") {
    const auto& h = shared();
    for (int m = -4; m <= 4; ++m) {
        const auto& up = h.entry(m + 1);
        const auto& cur = h.entry(m);
        // V_{m+1} = 1/U_m: zeros of V_{m+1} = poles of U_m
        REQUIRE(up.zerosV.size() == cur.polesU.size());
        for (size_t i = 0; i < up.zerosV.size(); ++i) {
            CHECK(up.zerosV[i].lo < cur.polesU[i].hi);
            CHECK(cur.polesU[i].lo < up.zerosV[i].hi);
        }
    }
}

TEST_CASE("sign structure far outside the root set") {
    const auto& h = shared();
    for (int m = -6; m <= 6; ++m) {
        const auto& e = h.entry(m);
        double lo = -1.0, hi = 1.0;
        for (const auto* boxes : {&e.zerosU, &e.polesU, &e.zerosV})
            for (const auto& b : *boxes) {
                lo = std::min(lo, b.lo.to_double());
                hi = std::max(hi, b.hi.to_double());
            }
        const double below = lo - 2.0, above = hi + 2.0;
        const double sm = m % 2 == 0 ? 1.0 : -1.0;
        CAPTURE(m);
        CHECK(e.U.eval(below) > 0.0);
        CHECK(e.V.eval(below) > 0.0);
        CHECK(sm * e.U.eval(above) > 0.0);
        CHECK(-sm * e.V.eval(above) > 0.0);
    }
}

TEST_CASE("concurrent reads while generating") {
    Hierarchy h(6);
    std::vector<std::thread> ts;
    std::atomic<int> failures{0};
    for (int t = 0; t < 8; ++t)
        ts.emplace_back([&h, &failures, t] {
            try {
                for (int m = -6; m <= 6; ++m) {
                    const auto& e = h.entry((m + t) % 6);
                    if (e.U.is_zero()) ++failures;
                }
            } catch (...) {
                ++failures;
            }
        });
    for (auto& t : ts) t.join();
    CHECK(failures == 0);
}

TEST_CASE("simplest rational in interval") {
    CHECK(simplest_rational_in(Rational(-1, 10), Rational(1, 7)) == Rational(0));
    CHECK(simplest_rational_in(Rational(3, 10), Rational(52, 100)) == Rational(1, 2));
    CHECK(simplest_rational_in(Rational(5, 2), Rational(7, 2)) == Rational(3));
    CHECK(simplest_rational_in(Rational(-7, 2), Rational(-5, 2)) == Rational(-3));
}
