#pragma once

#include <span>
#include <vector>

namespace hrf {

// Derivative at sample i from a centered Lagrange stencil on non-uniform nodes.
// Samples without a full centered stencil yield NaN.
std::vector<double> stencil_derivative(std::span<const double> t, std::span<const double> y,
                                       int points = 5);

// Linear interpolation of y(t) at time s; t must be monotone (either direction).
double interpolate(std::span<const double> t, std::span<const double> y, double s);

}  // namespace hrf
