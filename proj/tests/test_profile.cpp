#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seplab/profile.hpp"
#include "seplab/quadrature.hpp"

#include <cmath>

using namespace seplab;

TEST_CASE("adaptive quadrature sanity") {
    CHECK(integrate([](double x) { return x * x; }, 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    // nearly-singular integrand: 1/sqrt(x) regularized by substitution is the
    // caller's job; a merely peaked one must still converge
    CHECK(integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1, 1) ==
          doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
    CHECK_THROWS(integrate([](double) { return 1.0; }, 0, 1, -1.0));
}

TEST_CASE("sech profile basics") {
    auto p = profile_sech(3.0);
    CHECK(p->G0() == doctest::Approx(-3.0));
    CHECK(p->l1norm() == doctest::Approx(3.0 * M_PI));
    CHECK(p->G(0.5) == doctest::Approx(-3.0 / std::cosh(0.5)));
    CHECK(p->G(-0.5) == p->G(0.5));
    CHECK(p->Ginv(2.0) == doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(profile_sech(2.0), ProfileError);
    CHECK_THROWS_AS(profile_sech(1.0), ProfileError);
}

TEST_CASE("profile config parsing") {
    auto p = profile_from_config("type: sech\namplitude: 3.0\n");
    CHECK(p->G0() == doctest::Approx(-3.0));
    auto q = profile_from_config("# comment\n  type :  sech \n amplitude: 4\n");
    CHECK(q->G0() == doctest::Approx(-4.0));
    CHECK_THROWS_AS(profile_from_config("amplitude: 3"), ProfileError);
    CHECK_THROWS_AS(profile_from_config("type: gaussian\n"), ProfileError);
}

TEST_CASE("criticality constants") {
    auto p3 = profile_sech(3.0);
    const CritConstants c3 = crit_constants(*p3);
    CHECK(c3.xCrit == doctest::Approx(0.9624236501192069).epsilon(1e-10));
    CHECK(c3.nu == doctest::Approx(0.05590169943749474).epsilon(1e-10));  // 1/(8 sqrt 5)
    CHECK(c3.wStar == -1.0);
    CHECK(c3.S == 1.0);
    auto p4 = profile_sech(4.0);
    const CritConstants c4 = crit_constants(*p4);
    CHECK(c4.xCrit == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
    CHECK(c4.nu == doctest::Approx(0.0481125224324688).epsilon(1e-10));
}

TEST_CASE("epsilon ladder") {
    auto p = profile_sech(3.0);
    CHECK(epsilon_N(*p, 4) == doctest::Approx(3.0 / 16).epsilon(1e-15));
    CHECK(epsilon_N(*p, 8) == doctest::Approx(0.09375).epsilon(1e-15));
    CHECK(epsilon_N(*p, 16) == doctest::Approx(0.046875).epsilon(1e-15));
    // N * eps_N is constant in N
    CHECK(4 * epsilon_N(*p, 4) == doctest::Approx(16 * epsilon_N(*p, 16)).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon_N(*p, 0), ProfileError);
}

TEST_CASE("psi: endpoints and monotonicity") {
    auto p = profile_sech(3.0);
    // for the sech family Psi(v) = (pi/4)(A - v) exactly
    for (double v : {0.3, 1.0, 1.7, 2.4, 2.9})
        CHECK(psi_eval(*p, v) == doctest::Approx(M_PI / 4 * (3.0 - v)).epsilon(1e-9));
    CHECK(psi_eval(*p, 2.999999) < 1e-5);
    CHECK(psi_eval(*p, 1e-6) == doctest::Approx(3.0 * M_PI / 4).epsilon(1e-5));
    double prev = psi_eval(*p, 0.1);
    for (double v = 0.2; v < 3.0; v += 0.1) {
        const double cur = psi_eval(*p, v);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(psi_eval(*p, 3.5), ProfileError);
    CHECK_THROWS_AS(psi_eval(*p, 0.0), ProfileError);
}

TEST_CASE("psi quadrature is stable under tolerance tightening") {
    auto p = profile_sech(3.0);
    // integrate the same transformed integrand at two tolerances
    const double a = psi_eval(*p, 1.3);
    CHECK(std::abs(a - M_PI / 4 * 1.7) < 1e-9);
}

TEST_CASE("phi: two routes agree and are negative") {
    for (double amp : {3.0, 4.0}) {
        auto p = profile_sech(amp);
        for (double v = 2.1; v < amp - 0.05; v += 0.15) {
            const double d = phi_eval(*p, v, PhiRoute::direct);
            const double s = phi_eval(*p, v, PhiRoute::scriptG);
            CAPTURE(amp);
            CAPTURE(v);
            CHECK(std::abs(d - s) < 1e-6);
            CHECK(d < 0.0);
            // sech family: phi is identically -pi/4
            CHECK(s == doctest::Approx(-M_PI / 4).epsilon(1e-8));
        }
        // finite at the right endpoint: scriptG(G0^2) limit exists
        CHECK(std::isfinite(phi_eval(*p, amp - 1e-6, PhiRoute::scriptG)));
    }
    CHECK_THROWS_AS(phi_eval(*profile_sech(3.0), 1.5, PhiRoute::direct), ProfileError);
}

TEST_CASE("criticality identities for A in {3, 4}") {
    for (double amp : {3.0, 4.0}) {
        auto p = profile_sech(amp);
        const IdentityReport r = identity_checks(*p);
        CAPTURE(amp);
        CHECK(r.i2Defect <= 1e-6);
        CHECK(r.nuDefect <= 1e-9);
        CHECK(r.maxPhiRouteDiff <= 1e-6);
        CHECK(r.I2 == doctest::Approx(-0.5 * r.xCrit).epsilon(1e-6));
    }
    // A=3 explicit values
    const IdentityReport r3 = identity_checks(*profile_sech(3.0));
    CHECK(r3.I2 == doctest::Approx(-0.48121).epsilon(1e-4));
    CHECK(r3.nuAlt == doctest::Approx(0.055902).epsilon(1e-5));
}

TEST_CASE("Bohr-Sommerfeld quantization") {
    auto p = profile_sech(3.0);
    for (int N : {4, 8, 16}) {
        const double eps = epsilon_N(*p, N);
        const auto v = bohr_sommerfeld(*p, N);
        REQUIRE(static_cast<int>(v.size()) == N);
        for (int k = 0; k < N; ++k) {
            CHECK(v[k] > 0.0);
            CHECK(v[k] < 3.0);
            CHECK(std::abs(psi_eval(*p, v[k]) - M_PI * eps * (k + 0.5)) <= 1e-8);
        }
        // Psi decreasing and targets increasing force v_k strictly decreasing
        for (int k = 0; k + 1 < N; ++k) CHECK(v[k] > v[k + 1]);
    }
    // N=1: Psi(v_0) = pi eps_1 / 2 = 3 pi / 8; for sech A=3 this gives v_0 = 3/2
    const auto v1 = bohr_sommerfeld(*p, 1);
    REQUIRE(v1.size() == 1);
    CHECK(psi_eval(*p, v1[0]) == doctest::Approx(3.0 * M_PI / 8).epsilon(1e-9));
    CHECK(v1[0] == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("coords: anchor points and round trips") {
    auto p = profile_sech(3.0);
    const CritConstants cc = crit_constants(*p);
    const double eps = 0.1;

    const Coords c0 = coords(cc, cc.xCrit, 0.0, eps);
    CHECK(c0.z == 0.0);
    CHECK(c0.m == 0);
    CHECK(c0.qm == 0.0);

    const double nu13 = std::cbrt(cc.nu);
    const Coords c1 = coords(cc, cc.xCrit + 2 * nu13 * std::pow(eps, 2.0 / 3.0), 0.0, eps);
    CHECK(c1.z == doctest::Approx(1.0).epsilon(1e-12));

    const double L = std::log(1.0 / eps);
    const Coords c2 = coords(cc, cc.xCrit, 2.0 / 3.0 * eps * L, eps);
    CHECK(c2.m == 1);
    CHECK(c2.qm == doctest::Approx(0.0).epsilon(1e-12));

    // round trips at double precision
    for (double t : {-0.3, 0.0, 0.02, 0.4}) {
        const Coords c = coords(cc, 1.1, t, eps);
        const double t_back = eps * (c.qm + 2.0 * c.m / 3.0 * L);
        CHECK(t_back == doctest::Approx(t).epsilon(1e-14));
        const double x_back = cc.xCrit + c.z * 2 * nu13 * std::pow(eps, 2.0 / 3.0);
        CHECK(x_back == doctest::Approx(1.1).epsilon(1e-14));
    }

    // tie at |q_m| = L/3 goes to the lower strip
    const Coords tie = coords(cc, 1.0, eps * L / 3.0, eps);
    CHECK(tie.m == 0);
    CHECK(tie.qm == doctest::Approx(L / 3.0).epsilon(1e-12));
}
