#pragma once

#include "seplab/profile.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace seplab {

class PdeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double L = 21.0;      // half-domain; G of the stock profiles decays below 1e-8 there
    int nx = 4096;        // intervals; nx+1 grid points
    double eps = 0.1;
    double tEnd = 1.0;
    double cfl = 0.5;     // dt = cfl * min(dx, eps/4)
    int outputEvery = 1;
};

struct FieldFrame {
    double t = 0;
    Eigen::ArrayXd u, epsUt;
    double L = 0, dx = 0, eps = 0;
};

using FrameSink = std::function<void(const FieldFrame&)>;

/// Leapfrog integration of eps^2 u_tt - eps^2 u_xx + sin(u) = 0 with
/// pure-impulse data u = 0, eps u_t = G, Neumann walls at +-L.  Frames are
/// pushed every outputEvery steps (plus the initial and final ones).
void solve_pde(const Profile& p, const SolverConfig& cfg, const FrameSink& sink);

/// Same solver with a raw impulse function (test harness: zero or uniform
/// impulses that bypass the Klaus-Shaw checks).
void solve_pde_raw(const std::function<double(double)>& G, const SolverConfig& cfg,
                   const FrameSink& sink, bool check_decay = false);

/// Trapezoid energy integral (1/2)(eps u_t)^2 + (1/2)(eps u_x)^2 + 1 - cos u.
double pde_energy(const FieldFrame& frame, double eps);

/// Largest mirror asymmetry max |u(x) - u(-x)| over the frame.
double parity_defect(const FieldFrame& frame);

struct CompareWindow {
    double xMin, xMax, tMin, tMax;
};

struct CompareResult {
    double supError = 0;
    double l2Error = 0;
    long samples = 0;
};

/// Compare (cos(u/2), sin(u/2)) of the PDE frames against a model field on
/// the window grid.
CompareResult model_compare(const std::vector<FieldFrame>& frames,
                            const std::function<std::pair<double, double>(double, double)>& model,
                            const CompareWindow& window);

}  // namespace seplab
