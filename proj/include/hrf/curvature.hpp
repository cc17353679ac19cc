#pragma once

// Ricci curvature of diagonal invariant metrics g = x_1 Q|m_1 + ... + x_l Q|m_l.

#include <optional>
#include <span>
#include <vector>

#include "hrf/space_model.hpp"

namespace hrf {

struct DiagonalMetric {
    std::vector<double> x;
};

struct CurvatureReport {
    std::vector<double> r;    // Ricci endomorphism eigenvalue on each module
    std::vector<double> r0;   // traceless part r_m - scal/N
    double scal = 0;
    double ric_norm = 0;      // sqrt(sum d_m r_m^2)
    std::optional<double> rm_norm;
    double volume_power = 1;  // prod x_m^{d_m}
    int total_dim = 0;
    std::vector<int> dims;    // d_m, parallel to r

    double ric0_norm_sq() const;
};

// Throws NonPositiveMetric on a non-positive or ill-sized metric.
void validate_metric(const HomogeneousSpaceData& space, std::span<const double> x);

std::vector<double> ricci_diagonal(const HomogeneousSpaceData& space, std::span<const double> x);
inline std::vector<double> ricci_diagonal(const HomogeneousSpaceData& space,
                                          const DiagonalMetric& g) {
    return ricci_diagonal(space, std::span<const double>(g.x));
}

// rm_norm is filled in when total_dim == 3 (Weyl vanishes in dimension three).
CurvatureReport curvature_report(const HomogeneousSpaceData& space, std::span<const double> x);

// sqrt(scal^2/12 + |Ric_0|^2); throws WrongDimension unless total_dim == 3.
double rm_norm_dim3(const CurvatureReport& report);

}  // namespace hrf
