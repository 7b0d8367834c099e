#include "seplab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seplab {

namespace {

std::vector<double> singularity_points(const HierarchyEntry& e, bool of_u) {
    std::vector<double> pts;
    for (const auto& b : of_u ? e.zerosU : e.zerosV) pts.push_back(b.mid());
    for (const auto& b : e.polesU) pts.push_back(b.mid());
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

RegionClassifier::RegionClassifier(std::shared_ptr<const Hierarchy> h, RegionParams params)
    : h_(std::move(h)), params_(params) {
    if (!(params_.eps > 0) || !(params_.eps < 1))
        throw RegionError("RegionParams: eps must lie in (0, 1)");
    if (!(params_.delta > 0) || params_.kappa < 0)
        throw RegionError("RegionParams: delta must be positive and kappa nonnegative");
    // the top strip needs the (bound+1, -) region, so one extra entry
    if (params_.bound + 1 > h_->bound())
        throw RegionError("RegionParams: hierarchy bound must exceed the region bound");
    min_gap_ = std::numeric_limits<double>::infinity();
    for (int m = -params_.bound; m <= params_.bound; ++m) {
        for (bool of_u : {true, false}) {
            const auto pts = singularity_points(h_->entry(m), of_u);
            for (size_t i = 0; i + 1 < pts.size(); ++i)
                min_gap_ = std::min(min_gap_, pts[i + 1] - pts[i]);
        }
    }
    if (!(2.0 * params_.delta < min_gap_))
        throw RegionError("RegionParams: delta too large; neighboring teeth/notches would overlap");
}

double RegionClassifier::p_of(int m, double s) const {
    return s / params_.eps - (2.0 * m / 3.0) * std::log(1.0 / params_.eps);
}

bool RegionClassifier::member_plus(int m, double y, double p) const {
    const double L = std::log(1.0 / params_.eps);
    if (std::abs(p) > L / 3.0 + params_.kappa) return false;
    const HierarchyEntry& e = h_->entry(m);
    if (p <= 0.0) return root_set_distance(y, e.polesU) >= params_.delta * std::exp(0.5 * p);
    return root_set_distance(y, e.zerosU) <= params_.delta * std::exp(-0.5 * p);
}

bool RegionClassifier::member_minus(int m, double y, double p) const {
    // p is p_{m-1}
    const double L = std::log(1.0 / params_.eps);
    if (std::abs(p) > L / 3.0 + params_.kappa) return false;
    const HierarchyEntry& e = h_->entry(m);
    if (p >= 0.0) return root_set_distance(y, e.polesU) >= params_.delta * std::exp(-0.5 * p);
    return root_set_distance(y, e.zerosV) <= params_.delta * std::exp(0.5 * p);
}

bool RegionClassifier::contains(const RegionLabel& lab, double y, double s) const {
    if (lab.m < -params_.bound || lab.m > params_.bound + (lab.sign < 0 ? 1 : 0)) return false;
    return lab.sign > 0 ? member_plus(lab.m, y, p_of(lab.m, s))
                        : member_minus(lab.m, y, p_of(lab.m - 1, s));
}

std::vector<RegionLabel> RegionClassifier::classify(double y, double s) const {
    std::vector<RegionLabel> out;
    bool strip_covered = false;
    const double L = std::log(1.0 / params_.eps);
    for (int m = -params_.bound; m <= params_.bound; ++m) {
        if (std::abs(p_of(m, s)) <= L / 3.0) strip_covered = true;
        if (member_plus(m, y, p_of(m, s))) out.push_back({m, +1});
    }
    for (int m = -params_.bound; m <= params_.bound + 1; ++m)
        if (member_minus(m, y, p_of(m - 1, s))) out.push_back({m, -1});
    if (out.empty() && strip_covered)
        throw RegionError("classification gap: point inside the covered strips but in no region");
    return out;
}

double RegionClassifier::error_envelope(const RegionLabel& lab, double y, double p) const {
    const double e13 = std::cbrt(params_.eps);
    const HierarchyEntry& e = h_->entry(lab.m);
    if (lab.sign > 0) {
        if (!member_plus(lab.m, y, p)) throw RegionError("error_envelope: (y, p) outside the + region");
        const double dz = root_set_distance(y, e.zerosU);
        if (p > 0.0 && dz >= params_.delta * std::exp(-p)) return e13 * std::exp(p) * dz;
        const double dp = root_set_distance(y, e.polesU);
        if (dp <= params_.delta) return e13 / dp;
        return e13;
    }
    if (!member_minus(lab.m, y, p)) throw RegionError("error_envelope: (y, p) outside the - region");
    const double dz = root_set_distance(y, e.zerosV);
    if (p < 0.0 && dz >= params_.delta * std::exp(p)) return e13 * std::exp(-p) * dz;
    const double dp = root_set_distance(y, e.polesU);
    if (dp <= params_.delta) return e13 / dp;
    return e13;
}

}  // namespace seplab
