#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seplab/pde.hpp"

#include <cmath>

using namespace seplab;

namespace {

std::vector<FieldFrame> run_raw(const std::function<double(double)>& G, const SolverConfig& cfg) {
    std::vector<FieldFrame> frames;
    solve_pde_raw(G, cfg, [&](const FieldFrame& f) { frames.push_back(f); });
    return frames;
}

// reference pendulum integrator for the spatially-uniform oracle
// eps^2 w'' + sin w = 0, w(0) = 0, eps w'(0) = -c
double pendulum_rk4(double c, double eps, double t_end) {
    double w = 0.0, v = -c / eps;  // v = w'
    const double dt = eps * 1e-4;
    const long n = static_cast<long>(std::ceil(t_end / dt));
    const double h = t_end / n;
    for (long i = 0; i < n; ++i) {
        auto f = [&](double ww) { return -std::sin(ww) / (eps * eps); };
        const double k1v = f(w), k1w = v;
        const double k2v = f(w + 0.5 * h * k1w), k2w = v + 0.5 * h * k1v;
        const double k3v = f(w + 0.5 * h * k2w), k3w = v + 0.5 * h * k2v;
        const double k4v = f(w + h * k3w), k4w = v + h * k3v;
        w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return w;
}

}  // namespace

TEST_CASE("config validation") {
    SolverConfig bad;
    bad.eps = 0.1;
    bad.nx = 100;  // dx = 0.12 > eps/10
    CHECK_THROWS_AS(run_raw([](double) { return 0.0; }, bad), PdeError);
    bad.nx = 4096;
    bad.cfl = 1.5;
    CHECK_THROWS_AS(run_raw([](double) { return 0.0; }, bad), PdeError);
}

TEST_CASE("zero impulse stays zero") {
    SolverConfig cfg;
    cfg.eps = 0.2;
    cfg.nx = 4096;
    cfg.tEnd = 0.3;
    cfg.outputEvery = 16;
    const auto frames = run_raw([](double) { return 0.0; }, cfg);
    REQUIRE(frames.size() > 2);
    for (const auto& f : frames) {
        CHECK(f.u.abs().maxCoeff() == 0.0);
        CHECK(f.epsUt.abs().maxCoeff() == 0.0);
        CHECK(pde_energy(f, cfg.eps) == 0.0);
    }
}

TEST_CASE("uniform impulse follows the pendulum") {
    SolverConfig cfg;
    cfg.eps = 0.2;
    cfg.nx = 4096;
    cfg.tEnd = 0.5;
    cfg.outputEvery = 1000000;  // only first and last
    const double c = 1.3;
    const auto frames = run_raw([c](double) { return -c; }, cfg);
    const auto& last = frames.back();
    const double want = pendulum_rk4(c, cfg.eps, last.t);
    // spatially uniform: u_xx = 0, the PDE reduces to the pendulum ODE
    CHECK(last.u[cfg.nx / 2] == doctest::Approx(want).epsilon(5e-4));
    CHECK(last.u.maxCoeff() - last.u.minCoeff() < 1e-10);
}

TEST_CASE("initial energy matches the closed form and drifts slowly") {
    auto p = profile_sech(3.0);
    SolverConfig cfg;
    cfg.eps = 3.0 / 16;
    cfg.nx = 4096;
    cfg.tEnd = 0.4;
    cfg.cfl = 0.1;
    cfg.outputEvery = 32;
    std::vector<FieldFrame> frames;
    solve_pde(*p, cfg, [&](const FieldFrame& f) { frames.push_back(f); });
    const double e0 = pde_energy(frames.front(), cfg.eps);
    // (1/2) integral G^2 = 9 tanh(L)
    CHECK(e0 == doctest::Approx(9.0 * std::tanh(cfg.L)).epsilon(1e-5));
    double drift = 0;
    for (const auto& f : frames) drift = std::max(drift, std::abs(pde_energy(f, cfg.eps) - e0) / e0);
    CHECK(drift <= 1e-4);
}

TEST_CASE("even data keeps even solutions to machine precision") {
    auto p = profile_sech(3.0);
    SolverConfig cfg;
    cfg.eps = 3.0 / 16;
    cfg.nx = 4096;
    cfg.tEnd = 0.5;
    cfg.outputEvery = 100;
    double worst = 0;
    solve_pde(*p, cfg, [&](const FieldFrame& f) { worst = std::max(worst, parity_defect(f)); });
    CHECK(worst <= 1e-12);
}

TEST_CASE("second-order convergence under mesh refinement") {
    auto p = profile_sech(3.0);
    auto run_to = [&](int nx) {
        SolverConfig cfg;
        cfg.eps = 3.0 / 16;
        cfg.nx = nx;
        cfg.tEnd = 0.25;
        cfg.outputEvery = 1000000;
        std::vector<FieldFrame> frames;
        solve_pde(*p, cfg, [&](const FieldFrame& f) { frames.push_back(f); });
        return frames.back();
    };
    const FieldFrame a = run_to(4096), b = run_to(8192), c = run_to(16384);
    // final times differ by less than dt; compare fields on the common grid
    double e1 = 0, e2 = 0;
    for (int i = 0; i <= 4096; ++i) {
        e1 = std::max(e1, std::abs(a.u[i] - b.u[2 * i]));
        e2 = std::max(e2, std::abs(b.u[2 * i] - c.u[4 * i]));
    }
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.8);
    CHECK(order <= 2.6);
}

TEST_CASE("model_compare needs samples in the window") {
    SolverConfig cfg;
    cfg.eps = 0.2;
    cfg.nx = 4096;
    cfg.tEnd = 0.1;
    const auto frames = run_raw([](double) { return 0.0; }, cfg);
    CompareWindow w{0.0, 0.5, 0.0, 0.05};
    auto model = [](double, double) { return std::pair<double, double>(1.0, 0.0); };
    const auto r = model_compare(frames, model, w);
    CHECK(r.supError == doctest::Approx(0.0));  // u = 0 gives cos(u/2) = 1
    CHECK(r.samples > 0);
    CompareWindow empty{100.0, 101.0, 0.0, 0.05};
    CHECK_THROWS_AS(model_compare(frames, model, empty), PdeError);
}
