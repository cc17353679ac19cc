#pragma once

// Planar reductions of the volume-normalized flow in the ratio coordinates
// alpha = x_2/x_1, beta = x_3/x_1: the Berger sphere system and the SU(n)
// example system, with fixed point analysis and unstable-manifold runs.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hrf/flow.hpp"

namespace hrf {

struct PlanarState {
    double alpha = 0;
    double beta = 0;
};

using PlanarField = std::function<PlanarState(PlanarState)>;

// Volume-normalized Berger flow on S^3; requires alpha, beta > 0.
PlanarState s3_planar_field(PlanarState s);

// SU(n) example. The reparametrized system is polynomial and defined for beta = 0;
// the original one needs beta > 0. Both share integral curves.
PlanarState suN_planar_field(int n, PlanarState s, bool reparametrized = true);

double suN_fixed_alpha(int n, int which);  // which = 1 (node) or 2 (saddle)
// 4(n-1) - (n-2) alpha - (2n-1) beta; the triangle is {alpha > 0, beta > 0, hypotenuse >= 0}.
double suN_hypotenuse(int n, PlanarState s);
bool in_suN_triangle(int n, PlanarState s, double tol = 1e-12);

Eigen::Matrix2d suN_jacobian(int n, PlanarState s);
Eigen::Matrix2d finite_difference_jacobian(const PlanarField& field, PlanarState s, double step = 1e-6);

enum class FixedPointType { Node, Saddle, Other };
std::string to_string(FixedPointType type);

struct FixedPointInfo {
    int which = 0;
    PlanarState location;
    double residual = 0;            // |X(location)|
    Eigen::Matrix2d jacobian;       // analytic
    Eigen::Matrix2d jacobian_fd;    // central differences, step 1e-6
    std::array<double, 2> eigenvalues{};     // alpha-direction first, from jacobian_fd
    std::array<double, 2> closed_form{};
    FixedPointType type = FixedPointType::Other;
    Eigen::Vector2d unstable_direction;     // transverse to the alpha-axis, beta > 0
};

std::vector<FixedPointInfo> fixed_point_analysis(int n);

struct PlanarRunOptions {
    IntegratorOptions integrator;
    double alpha_floor = 1e-4;               // terminal event alpha = alpha_floor
    std::optional<std::array<double, 4>> window;  // alpha_min, alpha_max, beta_min, beta_max
};

FlowTrajectory integrate_planar(const PlanarField& field, PlanarState start,
                                const PlanarRunOptions& opts);

struct SuNPlanarRun {
    FlowTrajectory trajectory;
    bool entered_triangle = false;
    bool left_triangle = false;   // exit after entering, checked at every accepted step
    double min_ricci = 0;         // smallest r_m of the lifted metric x = (1, alpha, beta)
    PlanarState final_state;
};

// Follows the reparametrized SU(n) field from a start point, tracking triangle
// membership and the sign of the lifted Ricci curvature.
SuNPlanarRun run_suN_planar(int n, PlanarState start, const PlanarRunOptions& opts);

// Starts at fixed point + delta * direction. For the saddle (which = 2) the
// direction is its unstable eigenvector; for the node (which = 1) it is
// (cos angle, sin angle), angle in (0, pi).
SuNPlanarRun unstable_manifold_trajectory(int n, int which, double delta,
                                          const PlanarRunOptions& opts, double angle = 1.5707963267948966);

}  // namespace hrf
