#pragma once

// Packaged example runs: Berger spheres with unbounded extinction times, the
// SU(n) planar portrait and its ancient solutions, the almost-abelian gap family,
// plus the round-sphere and hyperbolic closed-form runs.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hrf/estimates.hpp"
#include "hrf/flow.hpp"
#include "hrf/kernels.hpp"
#include "hrf/planar.hpp"

namespace hrf {

// Defaults for scenario integrations. The blow-up threshold sits well below the
// integrator default so that T - t stays resolvable in double precision.
IntegratorOptions scenario_integrator_defaults();
// Long horizon for the Berger runs, which end by extinction.
IntegratorOptions berger_integrator_defaults();

struct ScenarioCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<ScenarioCheck>& checks);

struct BergerExperimentReport {
    int l = 0;
    double alpha0 = 0, beta0 = 0;
    double scal0 = 0;
    double ric_sq0_scaled = 0;  // |Ric(0)|^2 l^{-1/3}
    double rm0 = 0;
    bool event_hit = false;
    double t_event = 0;
    double beta_event = 0;
    std::optional<double> extinction_estimate;
    TypeProductSeries product_series;
    FlowTrajectory trajectory;
    std::vector<ScenarioCheck> checks;
};

// alpha_0 = l/4 + sqrt(l-1)/2, beta_0 = l/4 - sqrt(l-1)/2.
std::pair<double, double> berger_initial_ratios(int l);
// x proportional to (1, alpha_0, beta_0) with sqrt(x_1 x_2 x_3) = 1.
std::vector<double> berger_initial_metric(int l);

BergerExperimentReport run_berger(int l, const IntegratorOptions& opts);
// Members run in parallel; the list is in parameter order. Adds the
// cross-member monotonicity check to the last report.
std::vector<BergerExperimentReport> run_berger_family(const std::vector<int>& ls, const IntegratorOptions& opts);
ScenarioCheck berger_monotonicity(const std::vector<BergerExperimentReport>& reports);

struct HypotenuseCheck {
    std::size_t samples = 0;
    double max_alpha_velocity = 0;  // must stay < 0 on the open hypotenuse
    bool pass = false;
};

struct InteriorZeroSearch {
    int resolution = 0;
    std::size_t candidate_cells = 0;
    std::vector<PlanarState> zeros;  // confirmed interior zeros
    bool pass = false;               // no zero found
};

struct PortraitSpec {
    kernels::GridSpec grid;
    std::vector<PlanarState> seeds;  // empty: defaults near the node and across the triangle
    PlanarRunOptions run;
};

struct PhasePortraitGrid {
    int n = 0;
    kernels::GridSpec grid;
    std::vector<kernels::GridNode> velocities;
    std::vector<SuNPlanarRun> streamlines;
    std::vector<FixedPointInfo> fixed_points;
    HypotenuseCheck hypotenuse;
    InteriorZeroSearch interior;
    std::vector<ScenarioCheck> checks;
};

PortraitSpec default_portrait_spec(int n);
HypotenuseCheck hypotenuse_transversality(int n, std::size_t samples = 199);
InteriorZeroSearch interior_zero_search(int n, int resolution = 200);
PhasePortraitGrid run_suN_portrait(int n, const PortraitSpec& spec);

struct AncientMember {
    std::string label;  // node_k or saddle
    double angle = 0;   // node members only
    SuNPlanarRun run;
    double beta_limit = 0;
    bool positive_ricci = false;
};

struct AncientFamilyReport {
    int n = 0;
    std::vector<AncientMember> members;  // node members in angle order, then the saddle
    std::vector<ScenarioCheck> checks;
};

// Node member k starts at the node + delta (cos t_k, sin t_k), t_k = pi (k+1)/(count+1).
AncientFamilyReport run_ancient_family(int n, int count, const PlanarRunOptions& opts, double delta = 1e-6);
PlanarRunOptions ancient_run_defaults();

struct GapFamilyRow {
    int n = 0;
    double rm_sq = 0, sum_sq = 0, ratio = 0;
    double rm_sq_closed = 0, sum_sq_closed = 0, ratio_closed = 0;
    bool match = false;  // relative 1e-10
};

struct GapFamilyReport {
    std::vector<GapFamilyRow> rows;
    std::vector<ScenarioCheck> checks;
};

GapFamilyReport run_gap_family(const std::vector<int>& ns);

// Round S^3 collapse from (1,1,1); x(t) = 1 - 4t.
struct RoundSphereReport {
    FlowTrajectory trajectory;
    double max_deviation = 0;
    std::optional<double> extinction_estimate;
    TypeProductSeries rm_products, scal_products;
    std::vector<ScenarioCheck> checks;
};
RoundSphereReport run_round_sphere(const IntegratorOptions& opts);

// Almost-abelian n = 3, A = identity: a(t)^2 = 1/(1+4t), scal = -6/(1+4t).
struct HyperbolicReport {
    FlowTrajectory trajectory;
    double max_deviation = 0;  // relative, scal against the closed form
    std::vector<ScenarioCheck> checks;
};
HyperbolicReport run_hyperbolic(const IntegratorOptions& opts, double t_end = 10.0);

// Directory writers: trajectory CSV/JSON pairs plus summary.json (and portrait CSVs).
void write_berger(const std::filesystem::path& dir, const std::vector<BergerExperimentReport>& reports);
void write_portrait(const std::filesystem::path& dir, const PhasePortraitGrid& portrait);
void write_ancient_family(const std::filesystem::path& dir, const AncientFamilyReport& report);
void write_gap_family(const std::filesystem::path& dir, const GapFamilyReport& report);
void write_round_sphere(const std::filesystem::path& dir, const RoundSphereReport& report);
void write_hyperbolic(const std::filesystem::path& dir, const HyperbolicReport& report);

std::string portrait_grid_csv(const PhasePortraitGrid& portrait);

}  // namespace hrf
