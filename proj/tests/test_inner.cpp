#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seplab/inner.hpp"

#include <cmath>

using namespace seplab;
using namespace seplab::inner;

namespace {

const Hierarchy& shared() {
    static Hierarchy h(8);
    return h;
}

double max_abs(const CMatrix2& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix2 norm_factor(const cdouble& zeta, int m) {
    const cdouble w = std::pow(-zeta, 0.5 * (1 - 2 * m));
    CMatrix2 d = CMatrix2::Zero();
    d(0, 0) = w;
    d(1, 1) = 1.0 / w;
    return d;
}

}  // namespace

TEST_CASE("sector classification with counterclockwise boundary resolution") {
    CHECK(sector_of(std::polar(1.0, 0.1)) == 0);
    CHECK(sector_of(std::polar(1.0, 1.2)) == 1);
    CHECK(sector_of(std::polar(1.0, 2.5)) == 2);
    CHECK(sector_of(std::polar(1.0, -3.0)) == 3);
    CHECK(sector_of(std::polar(1.0, -1.8)) == 4);
    CHECK(sector_of(std::polar(1.0, -0.5)) == 5);
    // exactly on rays: counterclockwise side
    CHECK(sector_of({2.0, 0.0}) == 0);
    CHECK(sector_of(std::polar(1.0, M_PI / 3.0)) == 1);
    CHECK(sector_of({-2.0, 0.0}) == 3);
    CHECK(sector_of(std::polar(1.0, -M_PI / 3.0)) == 5);
}

TEST_CASE("m=0 normalization at moderate radius") {
    const cdouble zeta = std::polar(5.0, M_PI / 6.0);
    const CMatrix2 M = z0_eval(zeta, 0.0) * norm_factor(zeta, 0) - CMatrix2::Identity();
    CHECK(max_abs(M) < 0.5);
    // the deviation shrinks like 1/|zeta|
    const cdouble zeta2 = std::polar(10.0, M_PI / 6.0);
    const CMatrix2 M2 = z0_eval(zeta2, 0.0) * norm_factor(zeta2, 0) - CMatrix2::Identity();
    CHECK(max_abs(M2) < 0.6 * max_abs(M));
}

TEST_CASE("unimodularity of Z_0") {
    CHECK(std::abs(z0_eval({2.0, 1.0}, 1.5).determinant() - 1.0) < 1e-10);
    CHECK(std::abs(z0_eval({-1.0, 0.4}, -2.0).determinant() - 1.0) < 1e-10);
    CHECK(std::abs(z0_eval({0.3, -2.3}, 0.7).determinant() - 1.0) < 1e-10);
}

TEST_CASE("Schwarz symmetry of Z_0") {
    for (cdouble zeta : {cdouble(2, 1), cdouble(-1.5, 2.2), cdouble(0.4, -1.9), cdouble(-3, -0.7)}) {
        for (double y : {-2.0, 0.0, 1.3}) {
            const CMatrix2 a = z0_eval(std::conj(zeta), y).conjugate();
            const CMatrix2 b = z0_eval(zeta, y);
            CHECK(max_abs(a - b) < 1e-10 * std::max(1.0, max_abs(b)));
        }
    }
}

TEST_CASE("schlesinger factors: explicit m=0 and m=1 cases") {
    const auto& h = shared();
    // m=0 up: W_0 = 0, U_0 = 1
    auto [s1, s0] = schlesinger_step(h, 0, 1.7, Direction::up);
    Eigen::Matrix2d wantS1;
    wantS1 << -1, 0, 0, 0;
    Eigen::Matrix2d wantS0;
    wantS0 << 0, 1, -1, 0;
    CHECK((s1 - wantS1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((s0 - wantS0).cwiseAbs().maxCoeff() == 0.0);

    // m=1 up at y=0 is blocked: U_1(0) = 0
    CHECK_THROWS_AS(schlesinger_step(h, 1, 0.0, Direction::up), LadderBlockedError);
    try {
        schlesinger_step(h, 1, 0.0, Direction::up);
    } catch (const LadderBlockedError& e) {
        CHECK(e.step == 1);
        CHECK(e.box.contains(Rational(0)));
    }

    // m=1 down at y=2: V_1 = 1, Z_1 = 0
    auto [d1, d0] = schlesinger_step(h, 1, 2.0, Direction::down);
    Eigen::Matrix2d wantD1;
    wantD1 << 0, 0, 0, -1;
    Eigen::Matrix2d wantD0;
    wantD0 << 0, -1, 1, 0;
    CHECK((d1 - wantD1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d0 - wantD0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ladder factors are unimodular by construction") {
    const auto& h = shared();
    for (int m : {-3, -1, 2, 3}) {
        const InnerSolution sol = make_inner_solution(h, m, 1.3);
        CHECK(static_cast<int>(sol.ladder.size()) == std::abs(m));
        for (const auto& [S1, S0] : sol.ladder) {
            const cdouble zeta(0.8, -1.1);
            const CMatrix2 f = S1.cast<cdouble>() * zeta + S0.cast<cdouble>();
            CHECK(std::abs(f.determinant() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("up and down Schlesinger factors are inverse as matrix polynomials") {
    const auto& h = shared();
    for (int m : {-3, -1, 0, 2}) {
        for (double y : {-1.7, 0.4, 2.2}) {
            Eigen::Matrix2d u1, u0, d1, d0;
            try {
                std::tie(u1, u0) = schlesinger_step(h, m, y, Direction::up);
                std::tie(d1, d0) = schlesinger_step(h, m + 1, y, Direction::down);
            } catch (const LadderBlockedError&) {
                continue;
            }
            CAPTURE(m);
            CAPTURE(y);
            // (d1 z + d0)(u1 z + u0) = I identically in z
            CHECK((d1 * u1).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((d1 * u0 + d0 * u1).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((d0 * u0 - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("zm_eval: m=0 reduces to z0_eval exactly") {
    const auto& h = shared();
    const InnerSolution sol = make_inner_solution(h, 0, 2.5);
    const cdouble zeta(1.2, 0.7);
    CHECK(max_abs(zm_eval(sol, zeta) - z0_eval(zeta, 2.5)) == 0.0);
}

TEST_CASE("zm normalization and unimodularity") {
    const auto& h = shared();
    // m=1, y=3: Z_1 (-zeta)^{-sigma3/2} -> I
    const InnerSolution s1 = make_inner_solution(h, 1, 3.0);
    const cdouble z4 = std::polar(4.0, M_PI / 6.0);
    const CMatrix2 M4 = zm_eval(s1, z4) * norm_factor(z4, 1) - CMatrix2::Identity();
    CHECK(max_abs(M4) < 0.5);
    const cdouble z8 = std::polar(8.0, M_PI / 6.0);
    const CMatrix2 M8 = zm_eval(s1, z8) * norm_factor(z8, 1) - CMatrix2::Identity();
    CHECK(max_abs(M8) < 0.7 * max_abs(M4));

    // det at m=2, y=1, zeta=3i
    const InnerSolution s2 = make_inner_solution(h, 2, 1.0);
    CHECK(std::abs(zm_eval(s2, {0.0, 3.0}).determinant() - 1.0) < 2e-9);
}

TEST_CASE("ladder blocked at a pole of U_m") {
    const auto& h = shared();
    // y=0 is a pole of U_2, and indeed U_1(0)=0 blocks the second up-step
    CHECK_THROWS_AS(make_inner_solution(h, 2, 0.0), LadderBlockedError);
}

TEST_CASE("extracted A matches the hierarchy: explicit values") {
    const auto& h = shared();
    const InnerSolution s0 = make_inner_solution(h, 0, 2.0);
    const ExpansionData e0 = extract_coeffs(s0);
    CHECK(std::abs(e0.A(0, 1) - 1.0) < 1e-6);            // A_{0,12} = U_0 = 1
    CHECK(std::abs(e0.A(0, 0) - (-1.0 / 3.0)) < 1e-6);   // -2 H_0(2) = -1/3
    CHECK(std::abs(e0.A(1, 1) - 1.0 / 3.0) < 1e-6);
    CHECK(std::abs(e0.A(1, 0) - (-2.0 / 6.0)) < 1e-6);   // V_0(2) = -1/3

    const InnerSolution s2 = make_inner_solution(h, 2, 1.0);
    const ExpansionData e2 = extract_coeffs(s2);
    CHECK(std::abs(e2.A(0, 1) - 7.0 / 36.0) < 1e-5);     // U_2(1) = 7/36
}

TEST_CASE("extracted A and B agree with hierarchy across m and y") {
    const auto& h = shared();
    for (int m = -3; m <= 3; ++m) {
        for (double y : {-2.0, -0.5, 0.7, 2.0}) {
            const auto& e = h.entry(m);
            if (std::abs(e.U.den().eval(y)) < 1e-6) continue;  // pole
            InnerSolution sol;
            try {
                sol = make_inner_solution(h, m, y);
            } catch (const LadderBlockedError&) {
                continue;  // exact zero pivot (not expected at these y)
            }
            const ExpansionData ex = extract_coeffs(sol);
            CAPTURE(m);
            CAPTURE(y);
            const double H = e.H.eval(y);
            CHECK(std::abs(ex.A(0, 0) + 2 * H) < 1e-5);
            CHECK(std::abs(ex.A(1, 1) - 2 * H) < 1e-5);
            CHECK(std::abs(ex.A(0, 1) - e.U.eval(y)) < 1e-5);
            CHECK(std::abs(ex.A(1, 0) - e.V.eval(y)) < 1e-5);
            const auto b = h.b_entries(m);
            CHECK(std::abs(ex.B(0, 1) - b.B12.eval(y)) < 1e-4);
            CHECK(std::abs(ex.B(1, 0) - b.B21.eval(y)) < 1e-4);
        }
    }
}

TEST_CASE("A_{0,12} = 1 for many y") {
    const auto& h = shared();
    for (double y : {-3.0, -1.1, -0.2, 0.0, 0.4, 1.0, 1.9, 2.7, 3.4, 4.0}) {
        const InnerSolution sol = make_inner_solution(h, 0, y);
        CHECK(std::abs(extract_coeffs(sol).A(0, 1) - 1.0) < 1e-6);
    }
}

TEST_CASE("ray jumps are constant in radius and unimodular") {
    const auto& h = shared();
    const std::vector<double> radii{1.0, 1.75, 2.5};
    const InnerSolution s0 = make_inner_solution(h, 0, 0.0);
    CHECK(ray_jump_check(s0, 0, radii) <= 1e-8);
    for (int ray = 0; ray < 6; ++ray) {
        CHECK(std::abs(ray_jump_matrix(s0, ray, 2.0).determinant() - 1.0) < 1e-8);
    }
    const std::vector<double> radii2{1.0, 1.6, 2.2};
    const InnerSolution s1 = make_inner_solution(h, 1, 2.0);
    CHECK(ray_jump_check(s1, 3, radii2) <= 1e-8);
    const std::vector<double> radii3{1.0, 1.4, 1.8};
    for (int m : {-2, -1, 1, 2}) {
        const InnerSolution s = make_inner_solution(h, m, 0.9);
        for (int ray = 0; ray < 6; ++ray) CHECK(ray_jump_check(s, ray, radii3) <= 1e-8);
    }
}

TEST_CASE("jump matrices have the expected constant structure at m=0, y=0") {
    const auto& h = shared();
    const InnerSolution s0 = make_inner_solution(h, 0, 0.0);
    const cdouble i(0, 1);
    // ray 0: [[-1, -i], [0, -1]]; rays 1,3,5: [[1,0],[i,1]]; rays 2,4: [[1,i],[0,1]]
    CMatrix2 j = ray_jump_matrix(s0, 0, 1.5);
    CHECK(std::abs(j(0, 0) + 1.0) < 1e-9);
    CHECK(std::abs(j(0, 1) + i) < 1e-9);
    CHECK(std::abs(j(1, 0)) < 1e-9);
    for (int ray : {1, 3, 5}) {
        j = ray_jump_matrix(s0, ray, 1.5);
        CHECK(std::abs(j(0, 0) - 1.0) < 1e-9);
        CHECK(std::abs(j(1, 0) - i) < 1e-9);
        CHECK(std::abs(j(0, 1)) < 1e-9);
    }
    for (int ray : {2, 4}) {
        j = ray_jump_matrix(s0, ray, 1.5);
        CHECK(std::abs(j(0, 0) - 1.0) < 1e-9);
        CHECK(std::abs(j(0, 1) - i) < 1e-9);
        CHECK(std::abs(j(1, 0)) < 1e-9);
    }
}

TEST_CASE("jump matrices are independent of the ladder") {
    const auto& h = shared();
    const InnerSolution s0 = make_inner_solution(h, 0, 1.4);
    const InnerSolution s2 = make_inner_solution(h, 2, 1.4);
    for (int ray = 0; ray < 6; ++ray) {
        const CMatrix2 j0 = ray_jump_matrix(s0, ray, 1.5);
        const CMatrix2 j2 = ray_jump_matrix(s2, ray, 1.5);
        CHECK(max_abs(j0 - j2) < 1e-8);
    }
}

TEST_CASE("m=0 Lax residuals with order-2 decay") {
    const auto r4 = lax_residual(0.0, {2.0, 1.0}, 1e-4);
    CHECK(r4.ry <= 1e-6);
    CHECK(r4.rzeta <= 1e-6);
    // halving h cuts the residual by about 4
    const auto ra = lax_residual(0.5, {1.5, 0.8}, 4e-4);
    const auto rb = lax_residual(0.5, {1.5, 0.8}, 2e-4);
    CHECK(ra.ry / rb.ry > 2.5);
    CHECK(ra.ry / rb.ry < 6.0);
    CHECK(ra.rzeta / rb.rzeta > 2.5);
    CHECK(ra.rzeta / rb.rzeta < 6.0);
    CHECK_THROWS_AS(lax_residual(0.0, {2.0, 1.0}, 0.1), std::invalid_argument);
}

TEST_CASE("overflow guard rejects huge evaluation points") {
    CHECK_THROWS_AS(z0_eval({14.0, 0.5}, 0.0), std::domain_error);
    CHECK_THROWS_AS(extract_coeffs(make_inner_solution(shared(), 0, 0.0), 12.0), std::invalid_argument);
}
