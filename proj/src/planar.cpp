#include "hrf/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrf/error.hpp"

namespace hrf {

PlanarState s3_planar_field(PlanarState s) {
    const double a = s.alpha, b = s.beta;
    if (!(a > 0 && b > 0)) throw Error(ErrorCode::DomainViolation, "Berger system needs alpha, beta > 0");
    const double pref = 8.0 / std::pow(a * b, 2.0 / 3.0);
    return {pref * a * (1 - a) * (1 + a - b), pref * b * (1 - b) * (1 + b - a)};
}

PlanarState suN_planar_field(int n, PlanarState s, bool reparametrized) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    const double a = s.alpha, b = s.beta;
    if (!(a > 0) || !(b >= 0)) throw Error(ErrorCode::DomainViolation, "need alpha > 0, beta >= 0");
    const double nn = n;
    if (reparametrized) {
        return {-4.0 * (nn - 1) * (nn - 1) / nn + 4.0 * (nn - 1) * a - (nn * nn - 2) / nn * a * a - a * b,
                b * suN_hypotenuse(n, s)};
    }
    if (!(b > 0)) throw Error(ErrorCode::DomainViolation, "original SU(n) system needs beta > 0");
    const double d2 = nn * (nn - 2);
    const double total = 4 * (nn - 1) + d2 + 1;
    const double common = nn / (nn - 1) * std::pow(a, d2 / total) * std::pow(b, 1.0 / total);
    const double p = a * common;
    const double q = b * common;
    return {p * (4 * (nn - 1) - (nn * nn - 2) / nn * a - 4 * (nn - 1) * (nn - 1) / nn / a - b),
            q * suN_hypotenuse(n, s)};
}

double suN_fixed_alpha(int n, int which) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    const double r2 = std::sqrt(2.0);
    if (which == 1) return 2.0 * (n - 1) / (n + r2);
    if (which == 2) return 2.0 * (n - 1) / (n - r2);
    throw Error(ErrorCode::InvalidOptions, "fixed point index must be 1 or 2");
}

double suN_hypotenuse(int n, PlanarState s) {
    return 4.0 * (n - 1) - (n - 2.0) * s.alpha - (2.0 * n - 1) * s.beta;
}

bool in_suN_triangle(int n, PlanarState s, double tol) {
    return s.alpha > 0 && s.beta > 0 && suN_hypotenuse(n, s) >= -tol;
}

Eigen::Matrix2d suN_jacobian(int n, PlanarState s) {
    const double nn = n, a = s.alpha, b = s.beta;
    Eigen::Matrix2d j;
    j(0, 0) = 4 * (nn - 1) - 2 * (nn * nn - 2) / nn * a - b;
    j(0, 1) = -a;
    j(1, 0) = -(nn - 2) * b;
    j(1, 1) = 4 * (nn - 1) - (nn - 2) * a - 2 * (2 * nn - 1) * b;
    return j;
}

Eigen::Matrix2d finite_difference_jacobian(const PlanarField& field, PlanarState s, double step) {
    Eigen::Matrix2d j;
    const PlanarState ap = field({s.alpha + step, s.beta});
    const PlanarState am = field({s.alpha - step, s.beta});
    const PlanarState bp = field({s.alpha, s.beta + step});
    const PlanarState bm = field({s.alpha, s.beta - step});
    j(0, 0) = (ap.alpha - am.alpha) / (2 * step);
    j(1, 0) = (ap.beta - am.beta) / (2 * step);
    j(0, 1) = (bp.alpha - bm.alpha) / (2 * step);
    j(1, 1) = (bp.beta - bm.beta) / (2 * step);
    return j;
}

std::string to_string(FixedPointType type) {
    switch (type) {
        case FixedPointType::Node: return "node";
        case FixedPointType::Saddle: return "saddle";
        case FixedPointType::Other: return "other";
    }
    return "other";
}

std::vector<FixedPointInfo> fixed_point_analysis(int n) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    // The polynomial field extends to beta < 0, which the centered stencil needs on the axis.
    const PlanarField extended = [n](PlanarState s) {
        const double nn = n, a = s.alpha, b = s.beta;
        return PlanarState{-4.0 * (nn - 1) * (nn - 1) / nn + 4.0 * (nn - 1) * a -
                               (nn * nn - 2) / nn * a * a - a * b,
                           b * suN_hypotenuse(n, s)};
    };
    std::vector<FixedPointInfo> out;
    for (int which : {1, 2}) {
        FixedPointInfo fp;
        fp.which = which;
        fp.location = {suN_fixed_alpha(n, which), 0.0};
        const PlanarState v = suN_planar_field(n, fp.location);
        fp.residual = std::hypot(v.alpha, v.beta);
        fp.jacobian = suN_jacobian(n, fp.location);
        fp.jacobian_fd = finite_difference_jacobian(extended, fp.location);

        // Both Jacobians are upper triangular on the alpha-axis; the general 2x2
        // formula keeps the eigenvalue extraction honest if the FD fill-in is nonzero.
        const Eigen::Matrix2d& j = fp.jacobian_fd;
        const double tr = j.trace(), det = j.determinant();
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
        std::array<double, 2> ev{tr / 2 - disc, tr / 2 + disc};
        // Order so the first eigenvalue belongs to the alpha-direction.
        if (std::abs(ev[0] - j(0, 0)) > std::abs(ev[1] - j(0, 0))) std::swap(ev[0], ev[1]);
        fp.eigenvalues = ev;

        const double sign = which == 1 ? 1.0 : -1.0;
        fp.closed_form = {sign * 4.0 * (n - 1) * std::sqrt(2.0) / n,
                          4.0 * (n - 1) - (n - 2.0) * fp.location.alpha};
        if (ev[0] > 0 && ev[1] > 0) {
            fp.type = FixedPointType::Node;
        } else if (ev[0] * ev[1] < 0) {
            fp.type = FixedPointType::Saddle;
        }
        // Eigenvector of the beta-direction eigenvalue: (J11 - l2) v1 + J12 v2 = 0.
        const double l1 = fp.jacobian(0, 0), l2 = fp.jacobian(1, 1);
        Eigen::Vector2d dir(-fp.jacobian(0, 1), l2 - l1);
        if (dir(1) < 0) dir = -dir;
        fp.unstable_direction = dir.normalized();
        out.push_back(fp);
    }
    return out;
}

FlowTrajectory integrate_planar(const PlanarField& field, PlanarState start,
                                const PlanarRunOptions& opts) {
    OdeSystem sys;
    sys.dim = 2;
    sys.rhs = [&field](std::span<const double> y, std::span<double> out) {
        const PlanarState v = field({y[0], y[1]});
        out[0] = v.alpha;
        out[1] = v.beta;
    };
    sys.admissible = [](std::span<const double> y) { return y[0] > 0 && y[1] >= 0; };

    IntegratorOptions io = opts.integrator;
    io.events.push_back({"alpha_floor", [floor = opts.alpha_floor](std::span<const double> y) {
                             return y[0] - floor;
                         },
                         true});
    if (opts.window) {
        const auto w = *opts.window;
        io.events.push_back({"window_alpha_max", [w](std::span<const double> y) { return w[1] - y[0]; }, true});
        io.events.push_back({"window_beta_max", [w](std::span<const double> y) { return w[3] - y[1]; }, true});
        io.events.push_back({"window_alpha_min", [w](std::span<const double> y) { return y[0] - w[0]; }, true});
    }

    FlowTrajectory traj;
    traj.kind = TrajectoryKind::Planar;
    traj.field = FieldKind::Normalized;
    traj.dimension = 2;
    auto sol = integrate_ode(sys, {start.alpha, start.beta}, io);
    traj.times = std::move(sol.times);
    traj.states = std::move(sol.states);
    traj.termination = sol.termination;
    traj.events = std::move(sol.events);
    if (sol.terminal_event) traj.terminal_event = sol.terminal_event->name;
    traj.note = std::move(sol.note);
    return traj;
}

SuNPlanarRun run_suN_planar(int n, PlanarState start, const PlanarRunOptions& opts) {
    const auto space = preset_suN_example(n);
    SuNPlanarRun run;
    run.min_ricci = std::numeric_limits<double>::infinity();
    const PlanarField field = [n](PlanarState s) { return suN_planar_field(n, s, true); };
    run.trajectory = integrate_planar(field, start, opts);
    for (const auto& y : run.trajectory.states) {
        const PlanarState s{y[0], y[1]};
        const bool inside = in_suN_triangle(n, s);
        if (inside) run.entered_triangle = true;
        if (run.entered_triangle && !inside) run.left_triangle = true;
        const std::vector<double> x{1.0, s.alpha, s.beta};
        if (s.alpha > 0 && s.beta > 0) {
            const auto r = ricci_diagonal(space, x);
            run.min_ricci = std::min(run.min_ricci, *std::min_element(r.begin(), r.end()));
        }
    }
    const auto& last = run.trajectory.states.back();
    run.final_state = {last[0], last[1]};
    return run;
}

SuNPlanarRun unstable_manifold_trajectory(int n, int which, double delta,
                                          const PlanarRunOptions& opts, double angle) {
    if (!(delta > 0 && delta <= 1e-3)) {
        throw Error(ErrorCode::InvalidOptions, "perturbation must lie in (0, 1e-3]");
    }
    const auto fps = fixed_point_analysis(n);
    const auto& fp = fps.at(static_cast<std::size_t>(which - 1));
    Eigen::Vector2d dir;
    if (fp.type == FixedPointType::Saddle) {
        dir = fp.unstable_direction;
    } else {
        if (!(angle > 0 && angle < M_PI)) {
            throw Error(ErrorCode::InvalidOptions, "node perturbation angle must lie in (0, pi)");
        }
        dir = Eigen::Vector2d(std::cos(angle), std::sin(angle));
    }
    const PlanarState start{fp.location.alpha + delta * dir(0), delta * dir(1)};
    return run_suN_planar(n, start, opts);
}

}  // namespace hrf
