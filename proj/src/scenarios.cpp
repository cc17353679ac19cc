#include "hrf/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrf/error.hpp"
#include "hrf/io.hpp"
#include "hrf/trajectory_io.hpp"

namespace hrf {

using nlohmann::ordered_json;

namespace {

ScenarioCheck check(std::string name, bool pass, std::string detail) {
    return {std::move(name), pass, std::move(detail)};
}

ordered_json checks_json(const std::vector<ScenarioCheck>& checks) {
    auto arr = ordered_json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return arr;
}

ordered_json nullable(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

void write_summary(const std::filesystem::path& dir, ordered_json j) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "summary.json", dump_json(j));
}

}  // namespace

IntegratorOptions scenario_integrator_defaults() {
    IntegratorOptions o;
    o.blowup_threshold = 1e6;
    return o;
}

IntegratorOptions berger_integrator_defaults() {
    IntegratorOptions o = scenario_integrator_defaults();
    o.t_end = 1e4;
    o.max_step = 1.0;
    return o;
}

bool all_pass(const std::vector<ScenarioCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

// ----- Berger spheres -----

std::pair<double, double> berger_initial_ratios(int l) {
    if (l < 100) throw Error(ErrorCode::ParameterTooSmall, "Berger family needs l >= 100, got " + std::to_string(l));
    const double root = std::sqrt(l - 1.0);
    return {l / 4.0 + root / 2.0, l / 4.0 - root / 2.0};
}

std::vector<double> berger_initial_metric(int l) {
    const auto [a, b] = berger_initial_ratios(l);
    const double x1 = std::pow(a * b, -1.0 / 3.0);
    return {x1, x1 * a, x1 * b};
}

BergerExperimentReport run_berger(int l, const IntegratorOptions& opts) {
    BergerExperimentReport rep;
    rep.l = l;
    std::tie(rep.alpha0, rep.beta0) = berger_initial_ratios(l);
    const auto x0 = berger_initial_metric(l);
    const auto space = preset_su2();
    const auto r0 = curvature_report(space, x0);
    rep.scal0 = r0.scal;
    rep.ric_sq0_scaled = r0.ric_norm * r0.ric_norm * std::pow(l, -1.0 / 3.0);
    rep.rm0 = r0.rm_norm.value_or(0.0);

    IntegratorOptions io = opts;
    io.events.push_back({"berger_line", [](std::span<const double> x) { return (x[0] + x[2] - x[1]) / x[0]; },
                         false});
    rep.trajectory = integrate(space, FieldKind::Unnormalized, x0, io);
    for (const auto& ev : rep.trajectory.events) {
        if (ev.name != "berger_line") continue;
        rep.event_hit = true;
        rep.t_event = ev.time;
        rep.beta_event = ev.state[2] / ev.state[0];
        break;
    }
    rep.extinction_estimate = rep.trajectory.extinction_estimate;

    rep.checks.push_back(check("initial_ratios", rep.alpha0 > rep.beta0 && rep.beta0 > 1,
                               "alpha0 = " + format_sig(rep.alpha0) + ", beta0 = " + format_sig(rep.beta0)));
    rep.checks.push_back(check("scal0_vanishes", std::abs(rep.scal0) <= 1e-9, "scal(0) = " + format_sig(rep.scal0)));
    rep.checks.push_back(check("event_hit", rep.event_hit, rep.event_hit ? "t = " + format_sig(rep.t_event) : "none"));
    rep.checks.push_back(check("beta_at_event", rep.event_hit && rep.beta_event > rep.beta0,
                               "beta(t_event) = " + format_sig(rep.beta_event)));
    const bool extinct = rep.trajectory.termination == TerminationKind::Extinction && rep.extinction_estimate;
    rep.checks.push_back(check("extinction", extinct,
                               to_string(rep.trajectory.termination) +
                                   (rep.extinction_estimate ? ", T = " + format_sig(*rep.extinction_estimate) : "")));
    if (extinct) {
        rep.product_series = type_products(rep.trajectory, SolutionClass::FiniteExtinction);
        rep.checks.push_back(check("type_I_lower_bound", rep.product_series.min >= 0.125,
                                   "min |Rm|(T-t) = " + format_sig(rep.product_series.min)));
    }
    return rep;
}

ScenarioCheck berger_monotonicity(const std::vector<BergerExperimentReport>& reports) {
    std::vector<const BergerExperimentReport*> sorted;
    for (const auto& r : reports) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->l < b->l; });
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& t = sorted[i]->extinction_estimate;
        detail += (i ? ", " : "") + std::string("T(") + std::to_string(sorted[i]->l) + ") = " +
                  (t ? format_sig(*t) : std::string("none"));
        if (!t) ok = false;
        if (i > 0 && (sorted[i]->l == sorted[i - 1]->l || !t || !sorted[i - 1]->extinction_estimate ||
                      !(*t > *sorted[i - 1]->extinction_estimate)))
            ok = false;
    }
    return check("extinction_increasing", ok, detail);
}

std::vector<BergerExperimentReport> run_berger_family(const std::vector<int>& ls, const IntegratorOptions& opts) {
    if (ls.empty()) throw Error(ErrorCode::InvalidOptions, "no l values");
    for (int l : ls) berger_initial_ratios(l);
    auto reports = kernels::parallel_map<BergerExperimentReport>(
        ls.size(), [&](std::size_t i) { return run_berger(ls[i], opts); });
    if (reports.size() > 1) reports.back().checks.push_back(berger_monotonicity(reports));
    return reports;
}

// ----- SU(n) portrait -----

PortraitSpec default_portrait_spec(int n) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    const double a1 = suN_fixed_alpha(n, 1), a2 = suN_fixed_alpha(n, 2);
    const double beta_top = 4.0 * (n - 1) / (2.0 * n - 1);
    PortraitSpec spec;
    spec.grid.alpha_min = 0.025;
    spec.grid.alpha_max = 1.5 * a2;
    spec.grid.beta_min = 0;
    spec.grid.beta_max = 1.25 * beta_top;
    spec.grid.alpha_nodes = 41;
    spec.grid.beta_nodes = 41;
    spec.seeds = {{a1, 1e-3}, {a1 + 0.01, 1e-2}, {a2, 1e-3}, {0.5 * a1, 0.5 * beta_top},
                  {a2, 0.25 * beta_top}, {0.25 * a1, 0.1 * beta_top}};
    spec.run.integrator = scenario_integrator_defaults();
    spec.run.integrator.t_end = 50;
    spec.run.window = std::array<double, 4>{0, spec.grid.alpha_max, 0, spec.grid.beta_max};
    return spec;
}

HypotenuseCheck hypotenuse_transversality(int n, std::size_t samples) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    HypotenuseCheck out;
    out.samples = samples;
    out.max_alpha_velocity = -std::numeric_limits<double>::infinity();
    const double a_end = 4.0 * (n - 1) / (n - 2.0);
    for (std::size_t k = 1; k <= samples; ++k) {
        const double a = a_end * static_cast<double>(k) / static_cast<double>(samples + 1);
        const double b = (4.0 * (n - 1) - (n - 2.0) * a) / (2.0 * n - 1);
        const auto v = suN_planar_field(n, {a, b});
        // The hypotenuse has outward normal ((n-2), (2n-1)); beta' vanishes there,
        // so pointing inward is alpha' < 0.
        out.max_alpha_velocity = std::max(out.max_alpha_velocity, v.alpha);
    }
    out.pass = out.max_alpha_velocity < 0;
    return out;
}

InteriorZeroSearch interior_zero_search(int n, int resolution) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    if (resolution < 2) throw Error(ErrorCode::InvalidOptions, "resolution must be >= 2");
    InteriorZeroSearch out;
    out.resolution = resolution;
    const double a_max = 4.0 * (n - 1) / (n - 2.0);
    const double b_max = 4.0 * (n - 1) / (2.0 * n - 1);
    kernels::GridSpec g;
    g.alpha_min = a_max / resolution;
    g.alpha_max = a_max;
    g.beta_min = b_max / resolution;
    g.beta_max = b_max;
    g.alpha_nodes = resolution;
    g.beta_nodes = resolution;
    const auto nodes = kernels::suN_grid_parallel(n, g);
    auto at = [&](int i, int j) -> const kernels::GridNode& {
        return nodes[static_cast<std::size_t>(j) * resolution + i];
    };
    for (int j = 0; j + 1 < resolution; ++j) {
        for (int i = 0; i + 1 < resolution; ++i) {
            const std::array<const kernels::GridNode*, 4> c{&at(i, j), &at(i + 1, j), &at(i, j + 1), &at(i + 1, j + 1)};
            if (suN_hypotenuse(n, {c[0]->alpha, c[0]->beta}) < 0) continue;  // lowest corner outside
            auto straddles = [&](auto get) {
                double lo = get(*c[0]), hi = lo;
                for (auto* p : c) lo = std::min(lo, get(*p)), hi = std::max(hi, get(*p));
                return lo <= 0 && hi >= 0;
            };
            if (!straddles([](const auto& p) { return p.d_alpha; }) ||
                !straddles([](const auto& p) { return p.d_beta; }))
                continue;
            ++out.candidate_cells;
            // Newton from the cell centre.
            PlanarState s{0.5 * (c[0]->alpha + c[3]->alpha), 0.5 * (c[0]->beta + c[3]->beta)};
            bool converged = false;
            for (int it = 0; it < 60 && s.alpha > 0 && s.beta > 0; ++it) {
                const auto v = suN_planar_field(n, s);
                if (std::hypot(v.alpha, v.beta) < 1e-12) {
                    converged = true;
                    break;
                }
                const Eigen::Vector2d step = suN_jacobian(n, s).fullPivLu().solve(Eigen::Vector2d(v.alpha, v.beta));
                s.alpha -= step(0);
                s.beta -= step(1);
            }
            if (converged && s.beta > 1e-9 && in_suN_triangle(n, s)) out.zeros.push_back(s);
        }
    }
    out.pass = out.zeros.empty();
    return out;
}

PhasePortraitGrid run_suN_portrait(int n, const PortraitSpec& spec_in) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    PortraitSpec spec = spec_in;
    if (spec.seeds.empty()) spec.seeds = default_portrait_spec(n).seeds;
    PhasePortraitGrid out;
    out.n = n;
    out.grid = spec.grid;
    out.velocities = kernels::suN_grid_parallel(n, spec.grid);
    out.fixed_points = fixed_point_analysis(n);
    out.streamlines = kernels::parallel_map<SuNPlanarRun>(
        spec.seeds.size(), [&](std::size_t i) { return run_suN_planar(n, spec.seeds[i], spec.run); });
    out.hypotenuse = hypotenuse_transversality(n);
    out.interior = interior_zero_search(n);

    bool finite = true;
    for (const auto& v : out.velocities)
        if (v.beta >= 0 && !(std::isfinite(v.d_alpha) && std::isfinite(v.d_beta))) finite = false;
    out.checks.push_back(check("grid_velocities_finite", finite, std::to_string(out.velocities.size()) + " nodes"));
    for (const auto& fp : out.fixed_points) {
        const std::string tag = "fixed_point_" + std::to_string(fp.which);
        out.checks.push_back(check(tag + "_residual", fp.residual <= 1e-10,
                                   "alpha = " + format_sig(fp.location.alpha) + ", |X| = " + format_sig(fp.residual)));
        const double e0 = std::abs(fp.eigenvalues[0] - fp.closed_form[0]);
        const double e1 = std::abs(fp.eigenvalues[1] - fp.closed_form[1]);
        out.checks.push_back(check(tag + "_eigenvalues", e0 <= 1e-6 && e1 <= 1e-6,
                                   "{" + format_sig(fp.eigenvalues[0]) + ", " + format_sig(fp.eigenvalues[1]) + "}"));
        const auto expected = fp.which == 1 ? FixedPointType::Node : FixedPointType::Saddle;
        out.checks.push_back(check(tag + "_type", fp.type == expected, to_string(fp.type)));
    }
    out.checks.push_back(check("hypotenuse_transversal", out.hypotenuse.pass,
                               "max alpha' = " + format_sig(out.hypotenuse.max_alpha_velocity)));
    out.checks.push_back(check("no_interior_zero", out.interior.pass,
                               std::to_string(out.interior.candidate_cells) + " candidate cells, " +
                                   std::to_string(out.interior.zeros.size()) + " zeros"));
    for (std::size_t i = 0; i < out.streamlines.size(); ++i) {
        const auto& s = out.streamlines[i];
        if (!in_suN_triangle(n, spec.seeds[i])) continue;
        const bool ok = !s.left_triangle && s.trajectory.terminal_event == std::optional<std::string>("alpha_floor") &&
                        s.final_state.beta > 0;
        out.checks.push_back(check("streamline_" + std::to_string(i) + "_stays_in_triangle", ok,
                                   "end (" + format_sig(s.final_state.alpha) + ", " + format_sig(s.final_state.beta) + ")"));
    }
    return out;
}

// ----- ancient solutions -----

PlanarRunOptions ancient_run_defaults() {
    PlanarRunOptions o;
    o.integrator = scenario_integrator_defaults();
    o.integrator.t_end = 100;
    o.alpha_floor = 1e-4;
    return o;
}

AncientFamilyReport run_ancient_family(int n, int count, const PlanarRunOptions& opts, double delta) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3");
    if (count < 1) throw Error(ErrorCode::InvalidOptions, "ancient family needs count >= 1");
    AncientFamilyReport rep;
    rep.n = n;
    const std::size_t total = static_cast<std::size_t>(count) + 1;
    rep.members = kernels::parallel_map<AncientMember>(total, [&](std::size_t k) {
        AncientMember m;
        if (k < static_cast<std::size_t>(count)) {
            m.label = "node_" + std::to_string(k);
            m.angle = M_PI * static_cast<double>(k + 1) / (count + 1);
            m.run = unstable_manifold_trajectory(n, 1, delta, opts, m.angle);
        } else {
            m.label = "saddle";
            m.run = unstable_manifold_trajectory(n, 2, delta, opts);
        }
        m.beta_limit = m.run.final_state.beta;
        m.positive_ricci = m.run.min_ricci > 0;
        return m;
    });
    for (const auto& m : rep.members) {
        const bool floor_hit = m.run.trajectory.terminal_event == std::optional<std::string>("alpha_floor");
        rep.checks.push_back(check(m.label + "_in_triangle", m.run.entered_triangle && !m.run.left_triangle,
                                   "left = " + std::string(m.run.left_triangle ? "yes" : "no")));
        rep.checks.push_back(check(m.label + "_positive_ricci", m.positive_ricci,
                                   "min r = " + format_sig(m.run.min_ricci)));
        rep.checks.push_back(check(m.label + "_limit", floor_hit && m.run.final_state.alpha < 1e-3 && m.beta_limit > 0,
                                   "end (" + format_sig(m.run.final_state.alpha) + ", " + format_sig(m.beta_limit) + ")"));
    }
    return rep;
}

// ----- gap family -----

GapFamilyReport run_gap_family(const std::vector<int>& ns) {
    if (ns.empty()) throw Error(ErrorCode::InvalidOptions, "no dimensions");
    for (int n : ns)
        if (n < 4) throw Error(ErrorCode::DimensionTooSmall, "gap family needs n >= 4, got " + std::to_string(n));
    GapFamilyReport rep;
    rep.rows = kernels::parallel_map<GapFamilyRow>(ns.size(), [&](std::size_t i) {
        const int n = ns[i];
        const auto curv = almost_abelian_curvature(gap_family_algebra(n));
        const auto dec = decompose(curv.rm, curv.ricci, curv.scal);
        GapFamilyRow row;
        row.n = n;
        row.rm_sq = dec.rm_norm * dec.rm_norm;
        row.sum_sq = dec.rm_i_norm * dec.rm_i_norm + dec.rm_ric0_norm * dec.rm_ric0_norm;
        row.ratio = dec.weyl_over_rm.value_or(0.0);
        row.rm_sq_closed = gap_family_rm_sq(n);
        row.sum_sq_closed = gap_family_sum_sq(n);
        row.ratio_closed = gap_family_ratio(n);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
        row.match = rel(row.rm_sq, row.rm_sq_closed) <= 1e-10 && rel(row.sum_sq, row.sum_sq_closed) <= 1e-10 &&
                    rel(row.ratio, row.ratio_closed) <= 1e-10;
        return row;
    });
    for (const auto& r : rep.rows)
        rep.checks.push_back(check("closed_form_n" + std::to_string(r.n), r.match,
                                   "rm_sq = " + format_sig(r.rm_sq) + ", sum_sq = " + format_sig(r.sum_sq) +
                                       ", ratio = " + format_sig(r.ratio)));
    auto sorted = rep.rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    bool increasing = true;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (!(sorted[i].ratio > sorted[i - 1].ratio)) increasing = false;
    if (sorted.size() > 1)
        rep.checks.push_back(check("ratio_increasing", increasing,
                                   "n = " + std::to_string(sorted.front().n) + ".." + std::to_string(sorted.back().n)));
    return rep;
}

// ----- closed-form runs -----

RoundSphereReport run_round_sphere(const IntegratorOptions& opts) {
    RoundSphereReport rep;
    rep.trajectory = integrate(preset_su2(), FieldKind::Unnormalized, {1.0, 1.0, 1.0}, opts);
    const auto& tr = rep.trajectory;
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (double x : tr.states[i]) rep.max_deviation = std::max(rep.max_deviation, std::abs(x - (1 - 4 * tr.times[i])));
    rep.extinction_estimate = tr.extinction_estimate;
    rep.checks.push_back(check("exact_solution", rep.max_deviation <= 1e-8, "max |x - (1-4t)| = " + format_sig(rep.max_deviation)));
    const bool has_t = rep.extinction_estimate.has_value();
    rep.checks.push_back(check("extinction_time", has_t && std::abs(*rep.extinction_estimate - 0.25) <= 1e-4,
                               has_t ? "T = " + format_sig(*rep.extinction_estimate) : "none"));
    if (has_t) {
        rep.rm_products = type_products(tr, SolutionClass::FiniteExtinction);
        rep.scal_products = scalar_type_products(tr);
        const double target = std::sqrt(3.0) / 4;
        rep.checks.push_back(check("rm_product", std::abs(rep.rm_products.min - target) <= 1e-6 &&
                                                     std::abs(rep.rm_products.max - target) <= 1e-6,
                                   "[" + format_sig(rep.rm_products.min) + ", " + format_sig(rep.rm_products.max) + "]"));
        rep.checks.push_back(check("scal_product", std::abs(rep.scal_products.min - 1.5) <= 1e-6 &&
                                                       std::abs(rep.scal_products.max - 1.5) <= 1e-6,
                                   "[" + format_sig(rep.scal_products.min) + ", " + format_sig(rep.scal_products.max) + "]"));
        rep.checks.push_back(check("type_I_lower_bound", rep.rm_products.min >= 0.125, format_sig(rep.rm_products.min)));
    }
    return rep;
}

HyperbolicReport run_hyperbolic(const IntegratorOptions& opts, double t_end) {
    HyperbolicReport rep;
    IntegratorOptions io = opts;
    io.t_end = t_end;
    rep.trajectory = integrate_almost_abelian(AlmostAbelianAlgebra(Eigen::MatrixXd::Identity(2, 2)), io);
    const auto& tr = rep.trajectory;
    bool negative = true;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double exact = -6.0 / (1 + 4 * tr.times[i]);
        rep.max_deviation = std::max(rep.max_deviation, std::abs(tr.reports[i].scal - exact) / std::abs(exact));
        if (!(tr.reports[i].scal < 0)) negative = false;
    }
    rep.checks.push_back(check("reached_end", tr.termination == TerminationKind::ReachedEnd, to_string(tr.termination)));
    rep.checks.push_back(check("exact_scal", rep.max_deviation <= 1e-8, "max rel dev = " + format_sig(rep.max_deviation)));
    rep.checks.push_back(check("scal_negative", negative, ""));
    return rep;
}

// ----- writers -----

void write_berger(const std::filesystem::path& dir, const std::vector<BergerExperimentReport>& reports) {
    ordered_json j;
    j["scenario"] = "berger";
    auto members = ordered_json::array();
    std::vector<ScenarioCheck> all;
    for (const auto& r : reports) {
        const std::string stem = "l_" + std::to_string(r.l);
        write_trajectory(dir, stem, r.trajectory);
        members.push_back({{"l", r.l},
                           {"trajectory", stem + ".csv"},
                           {"alpha0", r.alpha0},
                           {"beta0", r.beta0},
                           {"scal0", r.scal0},
                           {"ric_sq0_scaled", r.ric_sq0_scaled},
                           {"rm0", r.rm0},
                           {"event_hit", r.event_hit},
                           {"t_event", r.event_hit ? ordered_json(r.t_event) : nullptr},
                           {"beta_event", r.event_hit ? ordered_json(r.beta_event) : nullptr},
                           {"extinction_estimate", nullable(r.extinction_estimate)},
                           {"product_min", r.product_series.min},
                           {"product_max", r.product_series.max},
                           {"checks", checks_json(r.checks)}});
        for (const auto& c : r.checks) all.push_back(c);
    }
    j["members"] = members;
    j["pass"] = all_pass(all);
    write_summary(dir, j);
}

std::string portrait_grid_csv(const PhasePortraitGrid& portrait) {
    std::string out = "alpha,beta,d_alpha,d_beta\n";
    for (const auto& v : portrait.velocities)
        out += format_number(v.alpha) + "," + format_number(v.beta) + "," + format_number(v.d_alpha) + "," +
               format_number(v.d_beta) + "\n";
    return out;
}

namespace {

ordered_json fixed_points_json(const std::vector<FixedPointInfo>& fps) {
    auto arr = ordered_json::array();
    for (const auto& fp : fps)
        arr.push_back({{"which", fp.which},
                       {"alpha", fp.location.alpha},
                       {"beta", fp.location.beta},
                       {"residual", fp.residual},
                       {"eigenvalues", {fp.eigenvalues[0], fp.eigenvalues[1]}},
                       {"closed_form", {fp.closed_form[0], fp.closed_form[1]}},
                       {"type", to_string(fp.type)},
                       {"unstable_direction", {fp.unstable_direction(0), fp.unstable_direction(1)}}});
    return arr;
}

}  // namespace

void write_portrait(const std::filesystem::path& dir, const PhasePortraitGrid& p) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "grid.csv", portrait_grid_csv(p));
    write_file_atomic(dir / "fixed_points.json", dump_json(fixed_points_json(p.fixed_points)));
    for (std::size_t i = 0; i < p.streamlines.size(); ++i)
        write_trajectory(dir, "streamline_" + std::to_string(i), p.streamlines[i].trajectory);
    ordered_json j;
    j["scenario"] = "suN-portrait";
    j["n"] = p.n;
    j["grid"] = {{"alpha_min", p.grid.alpha_min}, {"alpha_max", p.grid.alpha_max},
                 {"beta_min", p.grid.beta_min},   {"beta_max", p.grid.beta_max},
                 {"alpha_nodes", p.grid.alpha_nodes}, {"beta_nodes", p.grid.beta_nodes}};
    j["fixed_points"] = fixed_points_json(p.fixed_points);
    j["hypotenuse"] = {{"samples", p.hypotenuse.samples}, {"max_alpha_velocity", p.hypotenuse.max_alpha_velocity}};
    j["interior_search"] = {{"resolution", p.interior.resolution},
                            {"candidate_cells", p.interior.candidate_cells},
                            {"zeros", p.interior.zeros.size()}};
    j["checks"] = checks_json(p.checks);
    j["pass"] = all_pass(p.checks);
    write_summary(dir, j);
}

void write_ancient_family(const std::filesystem::path& dir, const AncientFamilyReport& rep) {
    ordered_json j;
    j["scenario"] = "ancient-family";
    j["n"] = rep.n;
    auto members = ordered_json::array();
    for (const auto& m : rep.members) {
        write_trajectory(dir, m.label, m.run.trajectory);
        members.push_back({{"label", m.label},
                           {"angle", m.angle},
                           {"start_alpha", m.run.trajectory.states.front()[0]},
                           {"start_beta", m.run.trajectory.states.front()[1]},
                           {"beta_limit", m.beta_limit},
                           {"min_ricci", m.run.min_ricci},
                           {"final_alpha", m.run.final_state.alpha}});
    }
    j["members"] = members;
    j["checks"] = checks_json(rep.checks);
    j["pass"] = all_pass(rep.checks);
    write_summary(dir, j);
}

void write_gap_family(const std::filesystem::path& dir, const GapFamilyReport& rep) {
    std::string csv = "n,rm_sq,sum_sq,ratio,rm_sq_closed,sum_sq_closed,ratio_closed,match\n";
    for (const auto& r : rep.rows)
        csv += std::to_string(r.n) + "," + format_number(r.rm_sq) + "," + format_number(r.sum_sq) + "," +
               format_number(r.ratio) + "," + format_number(r.rm_sq_closed) + "," + format_number(r.sum_sq_closed) +
               "," + format_number(r.ratio_closed) + "," + (r.match ? "1" : "0") + "\n";
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "gap_family.csv", csv);
    ordered_json j;
    j["scenario"] = "gap-family";
    j["checks"] = checks_json(rep.checks);
    j["pass"] = all_pass(rep.checks);
    write_summary(dir, j);
}

void write_round_sphere(const std::filesystem::path& dir, const RoundSphereReport& rep) {
    write_trajectory(dir, "round_sphere", rep.trajectory);
    ordered_json j;
    j["scenario"] = "round-sphere";
    j["max_deviation"] = rep.max_deviation;
    j["extinction_estimate"] = nullable(rep.extinction_estimate);
    j["rm_product"] = {{"min", rep.rm_products.min}, {"max", rep.rm_products.max}};
    j["scal_product"] = {{"min", rep.scal_products.min}, {"max", rep.scal_products.max}};
    j["checks"] = checks_json(rep.checks);
    j["pass"] = all_pass(rep.checks);
    write_summary(dir, j);
}

void write_hyperbolic(const std::filesystem::path& dir, const HyperbolicReport& rep) {
    write_trajectory(dir, "hyperbolic", rep.trajectory);
    ordered_json j;
    j["scenario"] = "hyperbolic";
    j["max_deviation"] = rep.max_deviation;
    j["checks"] = checks_json(rep.checks);
    j["pass"] = all_pass(rep.checks);
    write_summary(dir, j);
}

}  // namespace hrf
