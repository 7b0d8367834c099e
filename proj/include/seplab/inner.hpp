#pragma once

#include "seplab/airy.hpp"
#include "seplab/hierarchy.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace seplab::inner {

using CMatrix2 = Eigen::Matrix2cd;
using cdouble = std::complex<double>;

class LadderBlockedError : public std::runtime_error {
  public:
    LadderBlockedError(std::string msg, int step_index, RootBox offending)
        : std::runtime_error(std::move(msg)), step(step_index), box(std::move(offending)) {}
    int step;
    RootBox box;
};

class ExtractionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Index of the sector (k pi/3, (k+1) pi/3) containing arg zeta; points on a
/// ray resolve to the counterclockwise-adjacent sector.
int sector_of(const cdouble& zeta);

/// The m=0 solution assembled from Airy sectors (sign choice sigma = +1).
CMatrix2 z0_eval(const cdouble& zeta, double y);

/// Same, with the sector forced (boundary values on the rays).
CMatrix2 z0_eval_sector(const cdouble& zeta, double y, int sector);

/// Affine Schlesinger factor S1 zeta + S0 mapping index m to m+1 (up) or m-1
/// (down); coefficients are exact hierarchy evaluations at y, converted once.
enum class Direction { up, down };
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> schlesinger_step(const Hierarchy& h, int m, double y,
                                                             Direction dir);

/// Evaluator for Z_m(zeta; y): an Airy base plus |m| affine ladder factors.
struct InnerSolution {
    int m = 0;
    double y = 0;
    std::vector<std::pair<Eigen::Matrix2d, Eigen::Matrix2d>> ladder;  // applied base-first
};

InnerSolution make_inner_solution(const Hierarchy& h, int m, double y);

CMatrix2 zm_eval(const InnerSolution& sol, const cdouble& zeta);
CMatrix2 zm_eval_sector(const InnerSolution& sol, const cdouble& zeta, int sector);

/// Exponential-free evaluation L_m = Z_m e^{-(zeta^3 + y zeta) sigma3 / 2}.
CMatrix2 lm_eval_sector(const InnerSolution& sol, const cdouble& zeta, int sector);

/// Least-squares fit of Z_m (-zeta)^{(1-2m) sigma3/2} - I against
/// {1/zeta, ..., 1/zeta^5} on a sample ring; keeps the first three matrices.
struct ExpansionData {
    Eigen::Matrix2d A, B, C;
    double fitResidual = 0;
};
ExpansionData extract_coeffs(const InnerSolution& sol, double radius = 9.0, int samples = 48);

/// Max entrywise deviation of the ray jump L_-^{-1} L_+ across the radii.
/// Extracting the O(1) jump entries cancels products of size e^{|zeta^3 + y
/// zeta|}, so the radii must keep that factor well inside double range
/// (rho <= 2.5 for |y| <= 2 reaches the 1e-8 scale).
double ray_jump_check(const InnerSolution& sol, int ray_index, const std::vector<double>& radii);

/// The jump matrix itself at a given radius (for unimodularity checks).
CMatrix2 ray_jump_matrix(const InnerSolution& sol, int ray_index, double radius);

/// Central-difference residuals of both m=0 Lax equations.
struct LaxResiduals {
    double ry, rzeta;
};
LaxResiduals lax_residual(double y, const cdouble& zeta, double h);

}  // namespace seplab::inner
