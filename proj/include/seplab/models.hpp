#pragma once

#include "seplab/hierarchy.hpp"
#include "seplab/profile.hpp"
#include "seplab/regions.hpp"

#include <Eigen/Dense>

#include <memory>
#include <utility>
#include <vector>

namespace seplab {

/// Half-angle values of one of the asymptotic models; the pair always sits
/// on the unit circle.
struct ModelOutput {
    double cosHalf = 0;
    double sinHalf = 0;
    bool excluded_i = false;   // near a zero of U_m with the lower strip edge
    bool excluded_ii = false;  // near a pole of U_m with the upper strip edge
    bool saturated = false;    // evaluated in the pole limit
};

/// Superluminal kink: phase T_K = t/eps - 2m log(4 nu^{1/3}/eps^{1/3}) + log|U_m(z)|.
ModelOutput kink_model(const Hierarchy& h, int m, double z, double t, double eps, double nu);

/// Curve t(z) where the kink phase vanishes; gaps at zeros/poles of U_m are
/// skipped.
std::vector<std::pair<double, double>> kink_center_curve(const Hierarchy& h, int m, double z_lo,
                                                         double z_hi, double eps, double nu, int n);

/// Grazing collision centered at the simple zero z0 of U_{m-1}; z is the
/// rescaled spatial coordinate of the evaluation point.
ModelOutput grazing_model(const Hierarchy& h, int m, double z0, double z, double t, double eps,
                          double nu);

/// The x-independent homoclinic solution of u'' + sin u = 0.
std::pair<double, double> exact_kink(double T, int sigma);

/// The double-eigenvalue two-kink solution.
std::pair<double, double> exact_grazing(double X, double T, int kappa_sign);

/// Multiscale model on one region: caches the exact rational functions once
/// per (m, sign) so grid fills stay cheap.
class MultiscaleEvaluator {
  public:
    MultiscaleEvaluator(const Hierarchy& h, int m, int sign);
    /// q is the region's shifted time coordinate (q_m for +, q_{m-1} for -).
    ModelOutput eval(double z, double q, double eps, double nu) const;
    double r_value(double z, double q, double eps, double nu) const;

  private:
    int m_, sign_;
    RatFun F_;  // U_m for +, V_m for -
    RatFun B_;  // 2 H U - U' for +, 2 H V - V' for -
};

ModelOutput multiscale_model(const Hierarchy& h, int m, int sign, double z, double q, double eps,
                             double nu);

/// Leading-order eps*u_t near t = 0: -(S + 1/S) with S = 1.
double g_model(double z, double q0);

/// Region-dependent multiscale field over the (x, t) window near criticality.
/// On overlaps it evaluates every region claiming the point and flags
/// disagreement beyond the combined envelopes.
class MultiscaleField {
  public:
    struct Value {
        ModelOutput primary;
        std::vector<RegionLabel> labels;
        bool overlap_disagrees = false;
    };

    MultiscaleField(std::shared_ptr<const Hierarchy> h, RegionParams params, CritConstants cc);

    /// Throws RegionError outside the covered strips.
    Value eval(double x, double t) const;
    Value eval_scaled(double z, double s) const;

    const RegionClassifier& classifier() const { return rc_; }
    const CritConstants& crit() const { return cc_; }

  private:
    const MultiscaleEvaluator& evaluator(const RegionLabel& lab) const;
    std::shared_ptr<const Hierarchy> h_;
    RegionClassifier rc_;
    CritConstants cc_;
    std::vector<MultiscaleEvaluator> plus_, minus_;  // indexed by m + bound
};

/// A time slice pair (cos u, sin u) sampled on an (X, T) grid with spacing h
/// in both directions; rows index X, columns index T.
struct SampledField {
    Eigen::ArrayXXd cosU, sinU;
    double h;
};

/// Max interior residual of u_TT - u_XX + sin(u) after row-major continuous
/// unwrapping of the angle.
double sg_residual(const SampledField& field);

}  // namespace seplab
