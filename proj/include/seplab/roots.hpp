#pragma once

#include "seplab/poly.hpp"

#include <vector>

namespace seplab {

/// Closed interval isolating exactly one distinct real root.
struct RootBox {
    Rational lo, hi;
    int multiplicity = 1;

    bool contains(const Rational& y) const { return lo <= y && y <= hi; }
    double mid() const { return (Rational(1, 2) * (lo + hi)).to_double(); }
};

/// Isolate every distinct real root of p in a box of width <= width.
/// Boxes are sorted, pairwise disjoint, with p nonzero at box endpoints.
std::vector<RootBox> poly_real_roots(const Poly& p, const Rational& width);

/// Number of distinct real roots of p in (a, b] by Sturm's theorem.
int sturm_count(const Poly& p, const Rational& a, const Rational& b);

/// Distance from y to the nearest box midpoint; +infinity for an empty set.
double root_set_distance(double y, const std::vector<RootBox>& boxes);

}  // namespace seplab
