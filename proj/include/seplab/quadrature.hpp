#pragma once

#include <functional>

namespace seplab {

/// Adaptive Gauss-Legendre integration of f over [a, b] to absolute accuracy
/// tol: 20-point panels, bisected until the two-level difference is small.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

}  // namespace seplab
