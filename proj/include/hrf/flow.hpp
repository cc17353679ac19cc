#pragma once

// Homogeneous Ricci flow runs: diagonal metric flows x_m' = -2 x_m r_m (optionally
// volume normalized), bracket flows of almost-abelian algebras, and planar
// reductions. Every run produces a FlowTrajectory.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrf/curvature.hpp"
#include "hrf/curvature_operator.hpp"
#include "hrf/integrator.hpp"
#include "hrf/space_model.hpp"

namespace hrf {

enum class FieldKind { Unnormalized, Normalized };
enum class TrajectoryKind { Metric, AlmostAbelian, Planar };

std::string to_string(FieldKind kind);
std::string to_string(TrajectoryKind kind);

std::vector<double> field_unnormalized(const HomogeneousSpaceData& space, std::span<const double> x);
std::vector<double> field_normalized(const HomogeneousSpaceData& space, std::span<const double> x);

struct FlowTrajectory {
    TrajectoryKind kind = TrajectoryKind::Metric;
    FieldKind field = FieldKind::Unnormalized;
    int dimension = 0;  // manifold dimension N (2 for planar runs)
    std::shared_ptr<const HomogeneousSpaceData> space;  // metric runs only

    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<CurvatureReport> reports;  // empty for planar runs

    TerminationKind termination = TerminationKind::ReachedEnd;
    std::vector<EventRecord> events;
    std::optional<std::string> terminal_event;
    std::optional<double> extinction_estimate;
    std::string note;

    std::size_t size() const { return times.size(); }
    double t_final() const { return times.empty() ? 0.0 : times.back(); }
    bool has_rm_norm() const;
};

FlowTrajectory integrate(const HomogeneousSpaceData& space, FieldKind field,
                         const std::vector<double>& x0, IntegratorOptions opts);

// Ricci flow of left-invariant metrics on an almost-abelian group, written as the
// bracket flow A' = -trace(D^2) A - [[Q,D] - trace(D) D, A] in a moving orthonormal frame.
std::vector<double> almost_abelian_field(std::span<const double> a_flat, int n);
FlowTrajectory integrate_almost_abelian(const AlmostAbelianAlgebra& alg, IntegratorOptions opts);

// Remaining time to the singularity estimated from the leading-order collapse rate
// at the given sample.
double projected_remaining_time(const FlowTrajectory& traj, std::size_t sample);

// (T - t) dilation: t -> lambda t, g -> lambda g.
FlowTrajectory parabolic_rescale(const FlowTrajectory& traj, double lambda);

struct VolumeOdeCheck {
    double max_residual = 0;          // max |V' + V s| over interior samples
    double max_relative_residual = 0; // residual / max |V s|
    bool applicable = true;           // false for normalized runs
};

VolumeOdeCheck volume_ode_check(const FlowTrajectory& traj);

}  // namespace hrf
