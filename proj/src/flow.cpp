#include "hrf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrf/error.hpp"
#include "hrf/numeric.hpp"

namespace hrf {

namespace {

constexpr double kCollapseFloor = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(FieldKind kind) {
    return kind == FieldKind::Unnormalized ? "unnormalized" : "normalized";
}

std::string to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::Metric: return "metric";
        case TrajectoryKind::AlmostAbelian: return "almost_abelian";
        case TrajectoryKind::Planar: return "planar";
    }
    return "unknown";
}

std::vector<double> field_unnormalized(const HomogeneousSpaceData& space, std::span<const double> x) {
    const auto r = ricci_diagonal(space, x);
    std::vector<double> v(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) v[m] = -2.0 * x[m] * r[m];
    return v;
}

std::vector<double> field_normalized(const HomogeneousSpaceData& space, std::span<const double> x) {
    const auto r = ricci_diagonal(space, x);
    double scal = 0;
    for (std::size_t m = 0; m < x.size(); ++m) scal += space.summands()[m].dim * r[m];
    const double mean = scal / space.total_dim();
    std::vector<double> v(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) v[m] = -2.0 * x[m] * (r[m] - mean);
    return v;
}

bool FlowTrajectory::has_rm_norm() const {
    return !reports.empty() &&
           std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.rm_norm.has_value(); });
}

double projected_remaining_time(const FlowTrajectory& traj, std::size_t sample) {
    const auto& rep = traj.reports.at(sample);
    // Along s' = 2|Ric|^2 the reciprocal 1/s decays at rate 2|Ric|^2/s^2; this is
    // exact for Einstein collapse.
    if (rep.scal > 0 && rep.ric_norm > 0) return rep.scal / (2.0 * rep.ric_norm * rep.ric_norm);
    // Otherwise extrapolate the fastest shrinking component linearly.
    if (traj.kind == TrajectoryKind::Metric && traj.space) {
        const auto v = field_unnormalized(*traj.space, traj.states.at(sample));
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < v.size(); ++m)
            if (v[m] < 0) best = std::min(best, traj.states[sample][m] / -v[m]);
        if (std::isfinite(best)) return best;
    }
    return 0.0;
}

namespace {

void finalize_singular_time(FlowTrajectory& traj, Direction direction) {
    if (traj.termination == TerminationKind::Extinction && direction == Direction::Forward) {
        traj.extinction_estimate = traj.t_final() + projected_remaining_time(traj, traj.size() - 1);
    }
}

void copy_solution(FlowTrajectory& traj, OdeSolution&& sol) {
    traj.times = std::move(sol.times);
    traj.states = std::move(sol.states);
    traj.termination = sol.termination;
    traj.events = std::move(sol.events);
    if (sol.terminal_event) traj.terminal_event = sol.terminal_event->name;
    traj.note = std::move(sol.note);
}

}  // namespace

FlowTrajectory integrate(const HomogeneousSpaceData& space, FieldKind field,
                         const std::vector<double>& x0, IntegratorOptions opts) {
    validate_metric(space, x0);
    auto shared = std::make_shared<const HomogeneousSpaceData>(space);
    const bool dim3 = space.total_dim() == 3;

    OdeSystem sys;
    sys.dim = x0.size();
    sys.rhs = [&space, field](std::span<const double> x, std::span<double> out) {
        const auto v = field == FieldKind::Unnormalized ? field_unnormalized(space, x)
                                                        : field_normalized(space, x);
        std::copy(v.begin(), v.end(), out.begin());
    };
    sys.admissible = [](std::span<const double> x) {
        return std::all_of(x.begin(), x.end(), [](double v) { return v > 0; });
    };
    sys.collapsed = [](std::span<const double> x) {
        return std::any_of(x.begin(), x.end(), [](double v) { return v < kCollapseFloor; });
    };
    sys.monitor = [&space, dim3](std::span<const double> x) {
        const auto rep = curvature_report(space, x);
        return dim3 ? *rep.rm_norm : rep.ric_norm;
    };

    FlowTrajectory traj;
    traj.kind = TrajectoryKind::Metric;
    traj.field = field;
    traj.dimension = space.total_dim();
    traj.space = shared;
    copy_solution(traj, integrate_ode(sys, x0, opts));
    traj.reports.reserve(traj.size());
    for (const auto& x : traj.states) traj.reports.push_back(curvature_report(space, x));
    // A curvature blow-up of the unnormalized flow is its extinction time.
    if (field == FieldKind::Unnormalized && opts.direction == Direction::Forward &&
        traj.termination == TerminationKind::CurvatureBlowUp) {
        traj.termination = TerminationKind::Extinction;
    }
    finalize_singular_time(traj, opts.direction);
    return traj;
}

namespace {

AlmostAbelianAlgebra unflatten(std::span<const double> a_flat, int n) {
    const int k = n - 1;
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = a_flat[static_cast<std::size_t>(i * k + j)];
    return AlmostAbelianAlgebra(std::move(a));
}

std::vector<double> flatten(const Eigen::MatrixXd& a) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.push_back(a(i, j));
    return out;
}

CurvatureReport almost_abelian_report(const AlmostAbelianAlgebra& alg) {
    const auto curv = almost_abelian_curvature(alg);
    CurvatureReport rep;
    rep.total_dim = alg.n();
    rep.scal = curv.scal;
    rep.ric_norm = curv.ricci.norm();
    rep.rm_norm = curv.rm.entries.norm();
    rep.volume_power = kNaN;
    return rep;
}

}  // namespace

std::vector<double> almost_abelian_field(std::span<const double> a_flat, int n) {
    const auto alg = unflatten(a_flat, n);
    const Eigen::MatrixXd& d = alg.d();
    const Eigen::MatrixXd& q = alg.q();
    const Eigen::MatrixXd m = (q * d - d * q) - d.trace() * d;
    const double c = -(d * d).trace();
    const Eigen::MatrixXd da = c * alg.a() - (m * alg.a() - alg.a() * m);
    return flatten(da);
}

FlowTrajectory integrate_almost_abelian(const AlmostAbelianAlgebra& alg, IntegratorOptions opts) {
    const int n = alg.n();
    OdeSystem sys;
    sys.dim = static_cast<std::size_t>((n - 1) * (n - 1));
    sys.rhs = [n](std::span<const double> a, std::span<double> out) {
        const auto v = almost_abelian_field(a, n);
        std::copy(v.begin(), v.end(), out.begin());
    };
    sys.monitor = [n](std::span<const double> a) {
        return almost_abelian_curvature(unflatten(a, n)).rm.entries.norm();
    };
    FlowTrajectory traj;
    traj.kind = TrajectoryKind::AlmostAbelian;
    traj.field = FieldKind::Unnormalized;
    traj.dimension = n;
    copy_solution(traj, integrate_ode(sys, flatten(alg.a()), opts));
    for (const auto& a : traj.states) traj.reports.push_back(almost_abelian_report(unflatten(a, n)));
    if (opts.direction == Direction::Forward &&
        traj.termination == TerminationKind::CurvatureBlowUp && traj.reports.back().scal > 0) {
        traj.termination = TerminationKind::Extinction;
    }
    finalize_singular_time(traj, opts.direction);
    return traj;
}

FlowTrajectory parabolic_rescale(const FlowTrajectory& traj, double lambda) {
    if (!(lambda > 0)) throw Error(ErrorCode::InvalidOptions, "rescaling factor must be positive");
    FlowTrajectory out = traj;
    for (auto& t : out.times) t *= lambda;
    for (auto& ev : out.events) ev.time *= lambda;
    if (out.extinction_estimate) *out.extinction_estimate *= lambda;

    switch (traj.kind) {
        case TrajectoryKind::Metric:
            for (auto& x : out.states)
                for (auto& v : x) v *= lambda;
            if (traj.space) {
                for (std::size_t i = 0; i < out.size(); ++i)
                    out.reports[i] = curvature_report(*traj.space, out.states[i]);
                return out;
            }
            break;
        case TrajectoryKind::AlmostAbelian: {
            // Scaling the metric by lambda scales A in an orthonormal frame by lambda^{-1/2}.
            const double s = 1.0 / std::sqrt(lambda);
            for (auto& a : out.states)
                for (auto& v : a) v *= s;
            for (std::size_t i = 0; i < out.size(); ++i)
                out.reports[i] = almost_abelian_report(unflatten(out.states[i], traj.dimension));
            return out;
        }
        case TrajectoryKind::Planar:
            // Planar coordinates are ratios and do not change.
            return out;
    }
    // Logged quantities only (e.g. loaded from CSV).
    for (auto& rep : out.reports) {
        rep.scal /= lambda;
        rep.ric_norm /= lambda;
        for (auto& v : rep.r) v /= lambda;
        for (auto& v : rep.r0) v /= lambda;
        if (rep.rm_norm) *rep.rm_norm /= lambda;
        rep.volume_power *= std::pow(lambda, rep.total_dim);
    }
    return out;
}

VolumeOdeCheck volume_ode_check(const FlowTrajectory& traj) {
    if (traj.reports.size() < 10) {
        throw Error(ErrorCode::TooFewSamples, "volume check needs at least 10 samples");
    }
    std::vector<double> v(traj.size()), vs(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        v[i] = std::sqrt(traj.reports[i].volume_power);
        vs[i] = v[i] * traj.reports[i].scal;
    }
    const auto dv = stencil_derivative(traj.times, v, 7);
    VolumeOdeCheck out;
    out.applicable = traj.kind == TrajectoryKind::Metric && traj.field == FieldKind::Unnormalized;
    double scale = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        scale = std::max(scale, std::abs(vs[i]));
        if (std::isnan(dv[i])) continue;
        out.max_residual = std::max(out.max_residual, std::abs(dv[i] + vs[i]));
    }
    out.max_relative_residual = scale > 0 ? out.max_residual / scale : out.max_residual;
    return out;
}

}  // namespace hrf
