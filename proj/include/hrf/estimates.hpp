#pragma once

// Numerical monitors for the curvature estimates of homogeneous Ricci flows.
// The dimensional constants in these estimates are not explicit, so every check
// takes the constant from the caller and reports empirical extremal values.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hrf/curvature_operator.hpp"
#include "hrf/flow.hpp"

namespace hrf {

struct EstimateCheckResult {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // rhs - lhs
    bool pass = false;  // margin >= -1e-9 (1 + |rhs|)
    std::string context;
};

EstimateCheckResult make_check(std::string name, double lhs, double rhs, std::string context);

// |Rm(b)| <= max{1/(8(b-a)), 16 C^2 (scal(b) - scal(a))} with linear interpolation
// between stored samples.
EstimateCheckResult check_main_estimate(const FlowTrajectory& traj, double a, double b, double c);
// All pairs of the stored samples nearest 0, 1/4, 1/2, 3/4, 1 of the time span.
std::vector<EstimateCheckResult> main_estimate_windows(const FlowTrajectory& traj, double c);
// sup |Rm|/|Ric| over the stored samples (samples with Ric = 0 skipped).
double empirical_rm_over_ric(const FlowTrajectory& traj);

enum class SolutionClass { FiniteExtinction, Immortal, Ancient };
std::string to_string(SolutionClass kind);

struct TypeProductSeries {
    SolutionClass kind = SolutionClass::FiniteExtinction;
    std::vector<double> times;
    std::vector<double> products;
    double min = 0, max = 0;
    bool flat = false;  // |Rm| vanishes along the run; lower bounds do not apply
    double reference_time = 0;
};

// FiniteExtinction: |Rm| (T - t), T defaulting to the run's extinction estimate.
// Immortal: |Rm| (t - origin). Ancient: |Rm| |t - origin|. The origin defaults to
// the first sample time.
TypeProductSeries type_products(const FlowTrajectory& traj, SolutionClass kind,
                                std::optional<double> reference = std::nullopt);
// scal (T - t) along a finite-extinction run.
TypeProductSeries scalar_type_products(const FlowTrajectory& traj,
                                       std::optional<double> extinction = std::nullopt);

struct ScalarInequalityReport {
    std::vector<EstimateCheckResult> results;
    std::vector<std::pair<std::string, std::string>> skipped;  // (check, reason)
};

// Windows (start, mid), (mid, end), (start, end), mid being the stored sample
// nearest the midpoint. When c1 is absent the reverse
// reciprocal bound uses the window's sup of scal'/scal^2 = 2|Ric|^2/scal^2.
ScalarInequalityReport scalar_inequality_checks(const FlowTrajectory& traj,
                                                std::optional<double> c1 = std::nullopt);

struct ScalarEvolutionCheck {
    double max_relative_error = 0;   // |scal'_fd - 2|Ric|^2| / (2|Ric|^2)
    double min_comparison_margin = 0;  // scal'_fd - (2/N) scal^2 + 1e-6 (1 + scal^2)
    std::size_t samples_checked = 0;
};

// Finite-difference check of scal' = 2|Ric|^2 >= (2/N) scal^2 at interior samples.
ScalarEvolutionCheck scalar_evolution_check(const FlowTrajectory& traj);

struct DoublingReport {
    std::vector<EstimateCheckResult> results;
    std::optional<double> first_doubling_time;  // rescaled time where |Ric| reaches 2
    std::optional<double> empirical_constant;   // 1 / first_doubling_time
};

// Rescales so |Ric(0)| = 1, checks |Ric(t)| <= 2 for t <= 1/ricci_constant, and
// |Rm(t)| >= |Rm(b)|/2 on [b - 1/(8|Rm(b)|), b] for every sample b.
DoublingReport doubling_checks(const FlowTrajectory& traj, double ricci_constant);

struct MetricSample {
    HomogeneousSpaceData space;
    std::vector<double> x;
};
using GapSampleInput = std::variant<MetricSample, AlmostAbelianAlgebra>;

struct GapConstants {
    double sup_rm_over_ric = 0;
    std::optional<double> sup_weyl_over_rm;
    std::size_t rm_over_ric_witness = 0;
    std::optional<std::size_t> weyl_witness;
    std::size_t used = 0;  // non-flat samples
};

GapConstants empirical_gap_constants(const std::vector<GapSampleInput>& samples);

}  // namespace hrf
