#include "seplab/pde.hpp"

#include <cmath>

namespace seplab {

namespace {

void validate(const SolverConfig& cfg) {
    if (cfg.nx < 8) throw PdeError("SolverConfig: nx too small");
    if (!(cfg.L > 0) || !(cfg.eps > 0) || !(cfg.tEnd > 0)) throw PdeError("SolverConfig: bad sizes");
    if (!(cfg.cfl > 0) || !(cfg.cfl < 1)) throw PdeError("SolverConfig: cfl must lie in (0, 1)");
    if (cfg.outputEvery < 1) throw PdeError("SolverConfig: outputEvery must be >= 1");
    const double dx = 2.0 * cfg.L / cfg.nx;
    if (dx > cfg.eps / 10.0) throw PdeError("SolverConfig: dx must resolve eps (dx <= eps/10)");
}

}  // namespace

void solve_pde_raw(const std::function<double(double)>& G, const SolverConfig& cfg,
                   const FrameSink& sink, bool check_decay) {
    validate(cfg);
    const double dx = 2.0 * cfg.L / cfg.nx;
    const double dt = cfg.cfl * std::min(dx, cfg.eps / 4.0);
    const int n = cfg.nx + 1;
    const double inv_eps2 = 1.0 / (cfg.eps * cfg.eps);

    Eigen::ArrayXd x(n), g(n);
    for (int i = 0; i < n; ++i) {
        x[i] = -cfg.L + i * dx;
        g[i] = G(std::abs(x[i]) == 0.0 ? 0.0 : x[i]);
    }
    if (check_decay && (std::abs(g[0]) >= 1e-8 || std::abs(g[n - 1]) >= 1e-8))
        throw PdeError("solve_pde: impulse does not decay below 1e-8 at the walls; enlarge L");

    auto laplacian = [&](const Eigen::ArrayXd& u, Eigen::ArrayXd& out) {
        for (int i = 1; i < n - 1; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        out[0] = 2.0 * (u[1] - u[0]) / (dx * dx);          // Neumann ghost u[-1] = u[1]
        out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) / (dx * dx);
    };

    Eigen::ArrayXd prev = Eigen::ArrayXd::Zero(n);
    // Taylor start: u_tt(x, 0) = 0 for pure-impulse data, so u(dt) = dt G / eps
    Eigen::ArrayXd cur = dt / cfg.eps * g;
    Eigen::ArrayXd lap(n), next(n);

    const long steps = static_cast<long>(std::ceil(cfg.tEnd / dt - 1e-12));

    {
        FieldFrame f0;
        f0.t = 0;
        f0.u = prev;
        f0.epsUt = g;
        f0.L = cfg.L;
        f0.dx = dx;
        f0.eps = cfg.eps;
        sink(f0);
    }

    // invariant at entry of iteration `step`: prev = u^{step-1}, cur = u^{step}
    for (long step = 1; step <= steps; ++step) {
        laplacian(cur, lap);
        next = 2.0 * cur - prev + dt * dt * (lap - inv_eps2 * cur.sin());
        if (!next.allFinite())
            throw PdeError("solve_pde: non-finite field at step " + std::to_string(step) +
                           ", t=" + std::to_string(step * dt));
        if (step % cfg.outputEvery == 0 || step == steps) {
            FieldFrame f;
            f.t = step * dt;
            f.u = cur;
            f.epsUt = cfg.eps * (next - prev) / (2.0 * dt);
            f.L = cfg.L;
            f.dx = dx;
            f.eps = cfg.eps;
            sink(f);
        }
        std::swap(prev, cur);
        std::swap(cur, next);
    }
}

void solve_pde(const Profile& p, const SolverConfig& cfg, const FrameSink& sink) {
    solve_pde_raw([&p](double x) { return p.G(x); }, cfg, sink, true);
}

double pde_energy(const FieldFrame& frame, double eps) {
    const int n = static_cast<int>(frame.u.size());
    const double dx = frame.dx;
    Eigen::ArrayXd density(n);
    for (int i = 0; i < n; ++i) {
        double ux;
        if (i == 0)
            ux = (frame.u[1] - frame.u[0]) / dx;
        else if (i == n - 1)
            ux = (frame.u[n - 1] - frame.u[n - 2]) / dx;
        else
            ux = (frame.u[i + 1] - frame.u[i - 1]) / (2.0 * dx);
        density[i] = 0.5 * frame.epsUt[i] * frame.epsUt[i] + 0.5 * eps * eps * ux * ux +
                     (1.0 - std::cos(frame.u[i]));
    }
    double sum = 0;
    for (int i = 0; i + 1 < n; ++i) sum += 0.5 * (density[i] + density[i + 1]) * dx;
    return sum;
}

double parity_defect(const FieldFrame& frame) {
    const int n = static_cast<int>(frame.u.size());
    double worst = 0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(frame.u[i] - frame.u[n - 1 - i]));
    return worst;
}

CompareResult model_compare(const std::vector<FieldFrame>& frames,
                            const std::function<std::pair<double, double>(double, double)>& model,
                            const CompareWindow& window) {
    CompareResult r;
    double sq = 0;
    for (const auto& f : frames) {
        if (f.t < window.tMin - 1e-14 || f.t > window.tMax + 1e-14) continue;
        const int n = static_cast<int>(f.u.size());
        for (int i = 0; i < n; ++i) {
            const double x = -f.L + i * f.dx;
            if (x < window.xMin || x > window.xMax) continue;
            const auto [mc, ms] = model(x, f.t);
            const double pc = std::cos(0.5 * f.u[i]);
            const double ps = std::sin(0.5 * f.u[i]);
            const double err = std::max(std::abs(pc - mc), std::abs(ps - ms));
            r.supError = std::max(r.supError, err);
            sq += (pc - mc) * (pc - mc) + (ps - ms) * (ps - ms);
            ++r.samples;
        }
    }
    if (r.samples == 0) throw PdeError("model_compare: window contains no frame samples");
    r.l2Error = std::sqrt(sq / (2.0 * r.samples));
    return r;
}

}  // namespace seplab
