#include "hrf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>

#include "hrf/error.hpp"
#include "hrf/estimates.hpp"
#include "hrf/io.hpp"
#include "hrf/kernels.hpp"
#include "hrf/scenarios.hpp"
#include "hrf/trajectory_io.hpp"

namespace hrf {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidOptions, "bad integer '" + s + "' in '" + text + "'");
        }
    };
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(part));
            continue;
        }
        const int lo = to_int(part.substr(0, dots)), hi = to_int(part.substr(dots + 2));
        if (hi < lo) throw Error(ErrorCode::InvalidOptions, "empty range '" + part + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidOptions, "empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidOptions, "bad number '" + part + "' in '" + text + "'");
        }
    }
    return out;
}

namespace {

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::Io: return kExitParse;
        case ErrorCode::DimensionTooSmall:
        case ErrorCode::ParameterTooSmall:
        case ErrorCode::InvalidOptions: return kExitUsage;
        default: return kExitCheck;
    }
}

struct Globals {
    std::string out = "out";
    std::uint64_t seed = 1;
    int workers = 0;
    std::optional<double> rel_tol, abs_tol;
};

IntegratorOptions with_tolerances(IntegratorOptions o, const Globals& g) {
    if (g.rel_tol) o.rel_tol = *g.rel_tol;
    if (g.abs_tol) o.abs_tol = *g.abs_tol;
    o.validate();
    return o;
}

void write_config(const fs::path& dir, const std::string& command, const std::vector<std::string>& args,
                  const Globals& g) {
    ordered_json j;
    j["command"] = command;
    j["args"] = args;
    j["seed"] = g.seed;
    j["rel_tol"] = g.rel_tol ? ordered_json(*g.rel_tol) : nullptr;
    j["abs_tol"] = g.abs_tol ? ordered_json(*g.abs_tol) : nullptr;
    fs::create_directories(dir);
    write_file_atomic(dir / "config.json", dump_json(j));
}

void print_checks(std::ostream& out, const std::vector<ScenarioCheck>& checks) {
    for (const auto& c : checks)
        out << (c.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(34) << c.name << " " << c.detail << "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ----- space -----

HomogeneousSpaceData preset_space(const std::string& name, int n) {
    if (name == "su2") return preset_su2();
    if (name == "suN") return preset_suN_example(n);
    throw Error(ErrorCode::InvalidOptions, "unknown preset '" + name + "' (su2, suN)");
}

void print_space(std::ostream& out, const HomogeneousSpaceData& s) {
    out << "space " << s.name() << ": " << s.module_count() << " modules, dimension " << s.total_dim() << "\n";
    out << "  m   d_m   b_m\n";
    for (std::size_t m = 0; m < s.module_count(); ++m)
        out << "  " << m + 1 << "   " << s.summands()[m].dim << "   " << format_sig(s.summands()[m].killing_b) << "\n";
    out << "  structure constants\n";
    for (const auto& [t, v] : s.structure_constants().entries())
        out << "  [" << t[0] << t[1] << t[2] << "] = " << format_sig(v) << "\n";
}

int cmd_space(const std::string& action, const std::string& path, const std::string& preset, int n,
              std::ostream& out) {
    if (action == "dump") {
        if (preset.empty() || path.empty()) throw Error(ErrorCode::InvalidOptions, "dump needs --preset and a path");
        save_space(preset_space(preset, n), path);
        out << "wrote " << path << "\n";
        return kExitOk;
    }
    const HomogeneousSpaceData s = preset.empty() ? load_space(path) : preset_space(preset, n);
    if (action == "validate") {
        out << "valid: " << s.name() << "\n";
    } else if (action == "show") {
        print_space(out, s);
    } else {
        throw Error(ErrorCode::InvalidOptions, "unknown space action '" + action + "'");
    }
    return kExitOk;
}

// ----- flow -----

struct FlowArgs {
    std::string preset, space_path, x0, aa, field = "unnormalized";
    int n = 4;
    double t_start = 0, t_end = 1;
    bool backward = false;
    std::optional<double> max_step, blowup;
};

void print_trajectory_summary(std::ostream& out, const FlowTrajectory& tr) {
    out << "termination: " << to_string(tr.termination) << "\n";
    out << "samples: " << tr.size() << "\n";
    out << "t_final: " << format_sig(tr.t_final()) << "\n";
    if (tr.extinction_estimate) out << "extinction_estimate: " << format_sig(*tr.extinction_estimate) << "\n";
    for (const auto& ev : tr.events) out << "event " << ev.name << " at t = " << format_sig(ev.time) << "\n";
    if (!tr.reports.empty()) {
        const auto& r = tr.reports.back();
        out << "final scal: " << format_sig(r.scal) << ", |Ric|: " << format_sig(r.ric_norm);
        if (r.rm_norm) out << ", |Rm|: " << format_sig(*r.rm_norm);
        out << "\n";
    }
}

int cmd_flow(const FlowArgs& a, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
    IntegratorOptions opts;
    opts.t_start = a.t_start;
    opts.t_end = a.t_end;
    opts.direction = a.backward ? Direction::Backward : Direction::Forward;
    if (a.max_step) opts.max_step = *a.max_step;
    if (a.blowup) opts.blowup_threshold = *a.blowup;
    opts = with_tolerances(opts, g);

    FlowTrajectory tr;
    if (!a.aa.empty()) {
        const auto v = parse_double_list(a.aa);
        const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
        if (k * k != static_cast<int>(v.size())) throw Error(ErrorCode::InvalidOptions, "--aa needs a square matrix");
        Eigen::MatrixXd m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = v[static_cast<std::size_t>(i * k + j)];
        tr = integrate_almost_abelian(AlmostAbelianAlgebra(m), opts);
    } else {
        if (a.x0.empty()) throw Error(ErrorCode::InvalidOptions, "--x0 is required");
        if (a.preset.empty() == a.space_path.empty())
            throw Error(ErrorCode::InvalidOptions, "give exactly one of --preset or --space");
        const auto space = a.preset.empty() ? load_space(a.space_path) : preset_space(a.preset, a.n);
        FieldKind field;
        if (a.field == "unnormalized") field = FieldKind::Unnormalized;
        else if (a.field == "normalized") field = FieldKind::Normalized;
        else throw Error(ErrorCode::InvalidOptions, "--field must be unnormalized or normalized");
        tr = integrate(space, field, parse_double_list(a.x0), opts);
    }
    const fs::path dir = g.out;
    write_trajectory(dir, "trajectory", tr);
    write_config(dir, "flow", args, g);
    print_trajectory_summary(out, tr);
    out << "wrote " << (dir / "trajectory.csv").string() << "\n";
    return tr.termination == TerminationKind::StepUnderflow ? kExitNumeric : kExitOk;
}

// ----- scenario -----

struct ScenarioArgs {
    std::string name, l = "100,400,1600", n, count = "5";
    std::optional<double> t_end;
};

bool numeric_failure(const FlowTrajectory& tr) { return tr.termination == TerminationKind::StepUnderflow; }

int cmd_scenario(const ScenarioArgs& a, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
    const fs::path dir = fs::path(g.out) / a.name;
    std::vector<ScenarioCheck> checks;
    bool numeric = false;
    if (a.name == "berger") {
        auto io = with_tolerances(berger_integrator_defaults(), g);
        if (a.t_end) io.t_end = *a.t_end;
        const auto reports = run_berger_family(parse_int_list(a.l), io);
        write_berger(dir, reports);
        out << "     l        alpha0         beta0         scal0        t_event     beta_event    extinction\n";
        for (const auto& r : reports) {
            out << std::setw(6) << r.l << "  " << std::setw(12) << format_sig(r.alpha0) << "  " << std::setw(12)
                << format_sig(r.beta0) << "  " << std::setw(12) << format_sig(r.scal0) << "  " << std::setw(12)
                << format_sig(r.t_event) << "  " << std::setw(12) << format_sig(r.beta_event) << "  "
                << (r.extinction_estimate ? format_sig(*r.extinction_estimate) : std::string("-")) << "\n";
            checks.insert(checks.end(), r.checks.begin(), r.checks.end());
            numeric = numeric || numeric_failure(r.trajectory);
        }
    } else if (a.name == "suN-portrait") {
        for (int n : parse_int_list(a.n.empty() ? "4" : a.n)) {
            auto spec = default_portrait_spec(n);
            spec.run.integrator = with_tolerances(spec.run.integrator, g);
            const auto p = run_suN_portrait(n, spec);
            write_portrait(a.n.find_first_of(",.") == std::string::npos ? dir : dir / ("n_" + std::to_string(n)), p);
            out << "n = " << n << "\n";
            for (const auto& fp : p.fixed_points)
                out << "  fixed point " << fp.which << ": (" << format_sig(fp.location.alpha) << ", 0)  "
                    << to_string(fp.type) << "  eigenvalues {" << format_sig(fp.eigenvalues[0]) << ", "
                    << format_sig(fp.eigenvalues[1]) << "}\n";
            checks.insert(checks.end(), p.checks.begin(), p.checks.end());
            for (const auto& s : p.streamlines) numeric = numeric || numeric_failure(s.trajectory);
        }
    } else if (a.name == "ancient-family") {
        const auto ns = parse_int_list(a.n.empty() ? "3" : a.n);
        const int count = parse_int_list(a.count).front();
        auto opts = ancient_run_defaults();
        opts.integrator = with_tolerances(opts.integrator, g);
        if (a.t_end) opts.integrator.t_end = *a.t_end;
        for (int n : ns) {
            const auto rep = run_ancient_family(n, count, opts);
            write_ancient_family(ns.size() == 1 ? dir : dir / ("n_" + std::to_string(n)), rep);
            out << "n = " << n << "\n  member      start_alpha     start_beta     beta_limit      min_ricci\n";
            for (const auto& m : rep.members) {
                out << "  " << std::left << std::setw(8) << m.label << std::right << std::setw(15)
                    << format_sig(m.run.trajectory.states.front()[0]) << std::setw(15)
                    << format_sig(m.run.trajectory.states.front()[1]) << std::setw(15) << format_sig(m.beta_limit)
                    << std::setw(15) << format_sig(m.run.min_ricci) << "\n";
                numeric = numeric || numeric_failure(m.run.trajectory);
            }
            checks.insert(checks.end(), rep.checks.begin(), rep.checks.end());
        }
    } else if (a.name == "gap-family") {
        const auto rep = run_gap_family(parse_int_list(a.n.empty() ? "4..12" : a.n));
        write_gap_family(dir, rep);
        out << "   n          rm_sq         sum_sq          ratio\n";
        for (const auto& r : rep.rows)
            out << std::setw(4) << r.n << std::setw(15) << format_sig(r.rm_sq) << std::setw(15) << format_sig(r.sum_sq)
                << std::setw(15) << format_sig(r.ratio) << "\n";
        checks = rep.checks;
    } else if (a.name == "round-sphere") {
        auto io = with_tolerances(scenario_integrator_defaults(), g);
        if (a.t_end) io.t_end = *a.t_end;
        const auto rep = run_round_sphere(io);
        write_round_sphere(dir, rep);
        print_trajectory_summary(out, rep.trajectory);
        checks = rep.checks;
        numeric = numeric_failure(rep.trajectory);
    } else if (a.name == "hyperbolic") {
        const auto io = with_tolerances(scenario_integrator_defaults(), g);
        const auto rep = run_hyperbolic(io, a.t_end.value_or(10.0));
        write_hyperbolic(dir, rep);
        print_trajectory_summary(out, rep.trajectory);
        checks = rep.checks;
        numeric = numeric_failure(rep.trajectory);
    } else {
        throw Error(ErrorCode::InvalidOptions, "unknown scenario '" + a.name + "'");
    }
    write_config(dir, "scenario " + a.name, args, g);
    print_checks(out, checks);
    out << "wrote " << dir.string() << "\n";
    if (numeric) return kExitNumeric;
    return all_pass(checks) ? kExitOk : kExitCheck;
}

// ----- verify -----

struct VerifyArgs {
    std::string dir, checks = "main-estimate,type-products", solution_class;
    std::optional<double> c, c1, ricci_constant;
    double fd_tol = 1e-4;
    double volume_tol = 1e-8;
};

void print_result(std::ostream& out, const std::string& traj, const EstimateCheckResult& r) {
    out << (r.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(18) << traj << std::setw(18) << r.name
        << std::right << " lhs " << std::setw(16) << format_sig(r.lhs) << "  rhs " << std::setw(16) << format_sig(r.rhs)
        << "  margin " << std::setw(16) << format_sig(r.margin) << "  " << r.context << "\n";
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const auto trajs = load_trajectories(a.dir);
    if (trajs.empty()) throw Error(ErrorCode::Io, "no trajectories in " + a.dir);
    const auto selected = split(a.checks, ',');
    const std::vector<std::string> known{"main-estimate", "type-products", "scalar", "evolution", "doubling", "volume"};
    for (const auto& s : selected)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw Error(ErrorCode::InvalidOptions, "unknown check '" + s + "'");
    auto wants = [&](const std::string& s) { return std::find(selected.begin(), selected.end(), s) != selected.end(); };

    bool ok = true;
    std::size_t evaluated = 0;
    auto record = [&](const std::string& name, const EstimateCheckResult& r) {
        print_result(out, name, r);
        ok = ok && r.pass;
        ++evaluated;
    };
    for (const auto& [name, tr] : trajs) {
        if (tr.reports.empty()) {
            out << "  SKIP  " << name << " (no curvature columns)\n";
            continue;
        }
        if ((wants("main-estimate") || wants("type-products") || wants("doubling")) && !tr.has_rm_norm()) {
            out << "  SKIP  " << name << " |Rm| checks: no rm_norm column\n";
        }
        if (wants("main-estimate") && tr.has_rm_norm()) {
            const double c = a.c ? *a.c : empirical_rm_over_ric(tr);
            for (const auto& r : main_estimate_windows(tr, c)) record(name, r);
        }
        if (wants("type-products") && tr.has_rm_norm()) {
            SolutionClass cls = SolutionClass::Immortal;
            if (a.solution_class == "finite_extinction" || (a.solution_class.empty() && tr.extinction_estimate))
                cls = SolutionClass::FiniteExtinction;
            else if (a.solution_class == "ancient")
                cls = SolutionClass::Ancient;
            else if (!a.solution_class.empty() && a.solution_class != "immortal")
                throw Error(ErrorCode::InvalidOptions, "unknown solution class '" + a.solution_class + "'");
            const auto p = type_products(tr, cls);
            const std::string ctx = to_string(cls) + ", products in [" + format_sig(p.min) + ", " +
                                    format_sig(p.max) + "]" + (p.flat ? ", flat" : "");
            if (cls == SolutionClass::FiniteExtinction && !p.flat) {
                // |Rm| (T - t) >= 1/8 at a finite-time singularity.
                record(name, make_check("type_products", 0.125, p.min, ctx));
            } else {
                record(name, make_check("type_products", 0, 0, ctx + ", no universal bound"));
            }
        }
        if (wants("scalar")) {
            const auto rep = scalar_inequality_checks(tr, a.c1);
            for (const auto& r : rep.results) record(name, r);
            for (const auto& [check, reason] : rep.skipped) out << "  SKIP  " << name << " " << check << ": " << reason << "\n";
        }
        if (wants("evolution")) {
            const auto ev = scalar_evolution_check(tr);
            record(name, make_check("scal_derivative", ev.max_relative_error, a.fd_tol,
                                    std::to_string(ev.samples_checked) + " interior samples"));
            record(name, make_check("scal_comparison", -ev.min_comparison_margin, 0, "scal' >= (2/N) scal^2"));
        }
        if (wants("doubling") && tr.has_rm_norm()) {
            auto rep = doubling_checks(tr, a.ricci_constant.value_or(1.0));
            if (!a.ricci_constant && rep.empirical_constant) rep = doubling_checks(tr, *rep.empirical_constant);
            for (const auto& r : rep.results) record(name, r);
        }
        if (wants("volume")) {
            const auto v = volume_ode_check(tr);
            if (!v.applicable) {
                out << "  SKIP  " << name << " volume: not an unnormalized metric run\n";
            } else {
                record(name, make_check("volume_ode", v.max_relative_residual, a.volume_tol, "|V' + V scal| / max|V scal|"));
            }
        }
    }
    if (evaluated == 0) {
        err << "no checks evaluated\n";
        return kExitCheck;
    }
    out << (ok ? "all checks passed" : "some checks failed") << "\n";
    return ok ? kExitOk : kExitCheck;
}

// ----- gap-scan -----

struct GapScanArgs {
    std::string n = "4..8", mode = "uniform";
    int samples = 1000;
    double range = 2.0;
};

int cmd_gap_scan(const GapScanArgs& a, const Globals& g, const std::vector<std::string>& args, std::ostream& out) {
    SamplerSpec spec;
    spec.seed = g.seed;
    spec.range = a.range;
    if (a.mode == "uniform") spec.mode = SamplerMode::Uniform;
    else if (a.mode == "traceless") spec.mode = SamplerMode::TracelessSymmetric;
    else throw Error(ErrorCode::InvalidOptions, "--mode must be uniform or traceless");
    const fs::path dir = fs::path(g.out) / "gap_scan";
    fs::create_directories(dir);
    bool ok = true;
    auto rows = ordered_json::array();
    out << "   n    samples   max W/Rm       min W/Rm       max Rm/Ric     family ratio   reproduced\n";
    for (int n : parse_int_list(a.n)) {
        const auto rep = gap_scan(n, a.samples, spec);
        std::string csv = "sample_id,weyl_over_rm,rm_over_ric,scal,rm_norm,flat\n";
        for (const auto& s : rep.samples)
            csv += std::to_string(s.sample_id) + "," + format_number(s.weyl_over_rm.value_or(NAN)) + "," +
                   format_number(s.rm_over_ric.value_or(NAN)) + "," + format_number(s.scal) + "," +
                   format_number(s.rm_norm) + "," + (s.flat ? "1" : "0") + "\n";
        write_file_atomic(dir / ("n_" + std::to_string(n) + ".csv"), csv);
        const bool below_one = !rep.max_weyl_over_rm || *rep.max_weyl_over_rm < 1.0;
        ok = ok && rep.family_reproduced && below_one;
        auto opt = [](const std::optional<double>& v) { return v ? format_sig(*v) : std::string("-"); };
        out << std::setw(4) << n << std::setw(11) << rep.samples.size() << "   " << std::left << std::setw(15)
            << opt(rep.max_weyl_over_rm) << std::setw(15) << opt(rep.min_weyl_over_rm) << std::setw(15)
            << opt(rep.max_rm_over_ric) << std::setw(15) << format_sig(rep.family_ratio_closed) << std::right
            << yes_no(rep.family_reproduced) << "\n";
        auto nj = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
        rows.push_back({{"n", n},
                        {"samples", rep.samples.size()},
                        {"max_weyl_over_rm", nj(rep.max_weyl_over_rm)},
                        {"min_weyl_over_rm", nj(rep.min_weyl_over_rm)},
                        {"max_rm_over_ric", nj(rep.max_rm_over_ric)},
                        {"min_rm_over_ric", nj(rep.min_rm_over_ric)},
                        {"family_ratio_closed", rep.family_ratio_closed},
                        {"family_ratio_assembled", rep.family_ratio_assembled},
                        {"family_reproduced", rep.family_reproduced},
                        {"weyl_below_rm", below_one}});
    }
    ordered_json j;
    j["scan"] = rows;
    j["pass"] = ok;
    write_file_atomic(dir / "summary.json", dump_json(j));
    write_config(dir, "gap-scan", args, g);
    out << "wrote " << dir.string() << "\n";
    return ok ? kExitOk : kExitCheck;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homogeneous Ricci flow laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "output directory");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--workers", g.workers, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--rel-tol", g.rel_tol, "integrator relative tolerance");
    app.add_option("--abs-tol", g.abs_tol, "integrator absolute tolerance");

    std::string space_action, space_path, space_preset;
    int space_n = 4;
    auto* space = app.add_subcommand("space", "validate, show or dump a homogeneous space");
    space->add_option("action", space_action, "validate | show | dump")->required();
    space->add_option("path", space_path, "space JSON");
    space->add_option("--preset", space_preset, "su2 | suN");
    space->add_option("--n", space_n, "n for the suN preset");

    FlowArgs fa;
    auto* flow = app.add_subcommand("flow", "integrate a Ricci flow");
    flow->add_option("--preset", fa.preset, "su2 | suN");
    flow->add_option("--n", fa.n, "n for the suN preset");
    flow->add_option("--space", fa.space_path, "space JSON");
    flow->add_option("--x0", fa.x0, "initial metric, comma separated");
    flow->add_option("--aa", fa.aa, "almost-abelian matrix A, row-major, comma separated");
    flow->add_option("--field", fa.field, "unnormalized | normalized");
    flow->add_option("--t-start", fa.t_start);
    flow->add_option("--t-end", fa.t_end);
    flow->add_flag("--backward", fa.backward);
    flow->add_option("--max-step", fa.max_step);
    flow->add_option("--blowup", fa.blowup, "curvature blow-up threshold");

    ScenarioArgs sa;
    auto* scenario = app.add_subcommand("scenario", "run a packaged scenario");
    scenario->add_option("name", sa.name, "berger | suN-portrait | ancient-family | gap-family | round-sphere | hyperbolic")
        ->required();
    scenario->add_option("--l", sa.l, "Berger parameters");
    scenario->add_option("--n", sa.n, "dimension parameter(s)");
    scenario->add_option("--count", sa.count, "ancient family size");
    scenario->add_option("--t-end", sa.t_end);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check curvature estimates on stored trajectories");
    verify->add_option("dir", va.dir, "trajectory directory")->required();
    verify->add_option("--checks", va.checks, "main-estimate,type-products,scalar,evolution,doubling,volume");
    verify->add_option("-C,--constant", va.c, "constant C of the main estimate (default: sampled sup |Rm|/|Ric|)");
    verify->add_option("--c1", va.c1, "constant of the reverse reciprocal bound");
    verify->add_option("--ricci-constant", va.ricci_constant, "doubling-time constant");
    verify->add_option("--class", va.solution_class, "finite_extinction | immortal | ancient");
    verify->add_option("--fd-tol", va.fd_tol, "relative tolerance of the scal' check");
    verify->add_option("--volume-tol", va.volume_tol, "relative tolerance of the volume check");

    GapScanArgs ga;
    auto* gap = app.add_subcommand("gap-scan", "sample random almost-abelian algebras");
    gap->add_option("--n", ga.n, "dimensions");
    gap->add_option("--samples", ga.samples)->check(CLI::PositiveNumber);
    gap->add_option("--mode", ga.mode, "uniform | traceless");
    gap->add_option("--range", ga.range);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        kernels::set_workers(g.workers);
        if (*space) return cmd_space(space_action, space_path, space_preset, space_n, out);
        if (*flow) return cmd_flow(fa, g, args, out);
        if (*scenario) return cmd_scenario(sa, g, args, out);
        if (*verify) return cmd_verify(va, out, err);
        if (*gap) return cmd_gap_scan(ga, g, args, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}

}  // namespace hrf
