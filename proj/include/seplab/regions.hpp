#pragma once

#include "seplab/hierarchy.hpp"

#include <memory>
#include <vector>

namespace seplab {

struct RegionParams {
    double delta = 0.2;
    double kappa = 0.0;
    double eps = 0.1;
    int bound = 8;
};

struct RegionLabel {
    int m;
    int sign;  // +1 or -1
    friend bool operator==(const RegionLabel& a, const RegionLabel& b) {
        return a.m == b.m && a.sign == b.sign;
    }
};

class RegionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Membership and error-envelope queries for the interlocking strip regions
/// of the (y, s)-plane indexed by the hierarchy.
class RegionClassifier {
  public:
    /// Validates delta: no two real singularities of log|U_m| or log|V_m|
    /// with |m| <= bound may be closer than 2 delta.
    RegionClassifier(std::shared_ptr<const Hierarchy> h, RegionParams params);

    const RegionParams& params() const { return params_; }

    /// Shifted time coordinate p_m = s/eps - (2m/3) log(1/eps).
    double p_of(int m, double s) const;

    bool contains(const RegionLabel& lab, double y, double s) const;

    /// All labels whose membership predicate holds; throws RegionError when
    /// s lies inside the covered strips but no region claims (y, s).
    std::vector<RegionLabel> classify(double y, double s) const;

    /// Piecewise error envelope e_m^+/-; p is the region's own shifted
    /// coordinate (p_m for sign +, p_{m-1} for sign -).  Throws when (y, p)
    /// is outside the region.
    double error_envelope(const RegionLabel& lab, double y, double p) const;

    /// Smallest gap between consecutive log-singularities over |m| <= bound.
    double min_singularity_gap() const { return min_gap_; }

  private:
    bool member_plus(int m, double y, double p) const;
    bool member_minus(int m, double y, double p) const;

    std::shared_ptr<const Hierarchy> h_;
    RegionParams params_;
    double min_gap_;
};

}  // namespace seplab
