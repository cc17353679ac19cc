// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hrf/curvature.hpp"
#include "hrf/curvature_operator.hpp"
#include "hrf/estimates.hpp"
#include "hrf/io.hpp"
#include "hrf/kernels.hpp"
#include "hrf/planar.hpp"
#include "hrf/scenarios.hpp"
#include "support.hpp"

using namespace hrf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) { return format_sig(v, 6); }

Outcome formulas() {
    Outcome o;
    std::mt19937_64 rng(2024);
    double worst = 0;
    const auto su2 = preset_su2();
    for (int k = 0; k < 1000; ++k) {
        const auto x = testsupport::random_metric(rng, 3);
        const auto r = ricci_diagonal(su2, std::span<const double>(x));
        const long double p = 2.0L / ((long double)x[0] * x[1] * x[2]);
        for (int i = 0; i < 3; ++i) {
            const long double xi = x[i], a = x[(i + 1) % 3], b = x[(i + 2) % 3];
            const double c = static_cast<double>(p * (xi * xi - (a - b) * (a - b)));
            worst = std::max(worst, std::abs(r[i] - c) / std::abs(c));
        }
    }
    for (int n : {3, 4, 5}) {
        const auto s = preset_suN_example(n);
        for (int k = 0; k < 1000; ++k) {
            const auto x = testsupport::random_metric(rng, 3);
            const auto r = ricci_diagonal(s, std::span<const double>(x));
            const long double x1 = x[0], x2 = x[1], x3 = x[2], N = n;
            const double c[3] = {
                static_cast<double>(2 * N / x1 - N * (N - 2) / (2 * (N - 1)) * x2 / (x1 * x1) -
                                    N / (2 * (N - 1)) * x3 / (x1 * x1)),
                static_cast<double>(2 * (N - 1) / x2 + x2 / (x1 * x1)), static_cast<double>(N * x3 / (x1 * x1))};
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r[i] - c[i]) / std::abs(c[i]));
        }
    }
    o.require(worst <= 1e-12, "max rel err " + num(worst));
    o.detail = o.detail.empty() ? "max rel err " + num(worst) : o.detail;
    return o;
}

Outcome round_sphere() {
    Outcome o;
    const auto rep = run_round_sphere(scenario_integrator_defaults());
    const double T = rep.extinction_estimate.value_or(-1);
    o.require(rep.max_deviation <= 1e-8, "deviation " + num(rep.max_deviation));
    o.require(std::abs(T - 0.25) <= 1e-4, "T " + num(T));
    const auto scal = scalar_type_products(rep.trajectory);
    const auto rm = type_products(rep.trajectory, SolutionClass::FiniteExtinction);
    o.require(std::abs(scal.min - 1.5) <= 1e-6 && std::abs(scal.max - 1.5) <= 1e-6,
              "scal product [" + num(scal.min) + ", " + num(scal.max) + "]");
    const double q = std::sqrt(3.0) / 4;
    o.require(std::abs(rm.min - q) <= 1e-6 && std::abs(rm.max - q) <= 1e-6,
              "rm product [" + num(rm.min) + ", " + num(rm.max) + "]");
    o.require(rm.min > 0.125, "type I lower bound");
    if (o.pass)
        o.detail = "T " + num(T) + ", deviation " + num(rep.max_deviation) + ", |Rm|(T-t) " + num(rm.min) + ".." +
                   num(rm.max);
    return o;
}

Outcome scalar_identities() {
    Outcome o;
    const auto berger = run_berger(100, berger_integrator_defaults());
    const auto hyp = run_hyperbolic(scenario_integrator_defaults());
    std::ostringstream d;
    for (const auto* tr : {&berger.trajectory, &hyp.trajectory}) {
        const auto c = scalar_evolution_check(*tr);
        o.require(c.samples_checked > 10, "too few samples");
        o.require(c.max_relative_error <= 1e-4, "fd rel err " + num(c.max_relative_error));
        o.require(c.min_comparison_margin >= 0, "comparison margin " + num(c.min_comparison_margin));
        d << (tr == &hyp.trajectory ? ", hyperbolic " : "berger ") << "rel err " << num(c.max_relative_error);
    }
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome gap_family() {
    Outcome o;
    const auto c = almost_abelian_curvature(gap_family_algebra(4));
    const auto d = decompose(c.rm, c.ricci, c.scal);
    const double rm_sq = d.rm_norm * d.rm_norm;
    const double sum_sq = d.rm_i_norm * d.rm_i_norm + d.rm_ric0_norm * d.rm_ric0_norm;
    o.require(std::abs(rm_sq - 27) <= 1e-10 * 27, "rm_sq " + num(rm_sq));
    o.require(std::abs(sum_sq - 15) <= 1e-10 * 15, "sum " + num(sum_sq));
    o.require(d.weyl_over_rm && std::abs(*d.weyl_over_rm - 2.0 / 3) <= 1e-10, "ratio");
    std::vector<int> ns;
    for (int n = 4; n <= 20; ++n) ns.push_back(n);
    const auto fam = run_gap_family(ns);
    for (const auto& r : fam.rows) o.require(r.match, "closed form n = " + std::to_string(r.n));
    double prev = gap_family_ratio(5);
    for (int n = 6; n <= 50; ++n) {
        const auto cn = almost_abelian_curvature(gap_family_algebra(n));
        const double ratio = decompose(cn.rm, cn.ricci, cn.scal).weyl_over_rm.value_or(0);
        o.require(ratio > prev, "ratio not increasing at n = " + std::to_string(n));
        prev = ratio;
    }
    if (o.pass) o.detail = "27, 15, 2/3; ratio(50) " + num(prev);
    return o;
}

double rm_entry(const CurvatureOperatorMatrix& rm, int a, int b, int c, int d) {
    if (a == b || c == d) return 0.0;
    double sign = 1;
    if (a > b) std::swap(a, b), sign = -sign;
    if (c > d) std::swap(c, d), sign = -sign;
    return sign * rm.entries(wedge_index(rm.n, a, b), wedge_index(rm.n, c, d));
}

Outcome decomposition() {
    Outcome o;
    SamplerSpec spec;
    spec.seed = 7;
    double orth = 0, norms = 0, contraction = 0;
    for (std::uint64_t id = 0; id < 500; ++id) {
        const int n = 4 + static_cast<int>(id % 5);
        const auto alg = sample_algebra(n, spec, id);
        const auto c = almost_abelian_curvature(alg);
        const auto d = decompose(c.rm, c.ricci, c.scal);
        const double scale = std::max(d.rm_norm * d.rm_norm, 1e-300);
        orth = std::max({orth, std::abs(frobenius_inner(d.rm_i.entries, d.rm_ric0.entries)) / scale,
                         std::abs(frobenius_inner(d.rm_i.entries, d.weyl.entries)) / scale,
                         std::abs(frobenius_inner(d.rm_ric0.entries, d.weyl.entries)) / scale});
        const Eigen::MatrixXd ric0 = c.ricci - c.scal / n * Eigen::MatrixXd::Identity(n, n);
        norms = std::max({norms,
                          std::abs(d.rm_i_norm * d.rm_i_norm - c.scal * c.scal / (2.0 * n * (n - 1))) / (1 + scale),
                          std::abs(d.rm_ric0_norm * d.rm_ric0_norm - ric0.squaredNorm() / (n - 2)) / (1 + scale)});
        Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
        for (int a = 0; a < n; ++a)
            for (int e = 0; e < n; ++e)
                for (int b = 0; b < n; ++b) ric(a, e) += rm_entry(c.rm, a, b, e, b);
        const Eigen::MatrixXd& D = alg.d();
        const Eigen::MatrixXd& Q = alg.q();
        Eigen::MatrixXd closed = Eigen::MatrixXd::Zero(n, n);
        closed(0, 0) = -(D * D).trace();
        closed.bottomRightCorner(n - 1, n - 1) = Q * D - D * Q - D.trace() * D;
        contraction = std::max(contraction, (ric - closed).norm() / (1 + closed.norm()));
    }
    o.require(orth <= 1e-9, "orthogonality " + num(orth));
    o.require(norms <= 1e-10, "norms " + num(norms));
    o.require(contraction <= 1e-10, "contraction " + num(contraction));
    if (o.pass) o.detail = "orth " + num(orth) + ", norms " + num(norms) + ", contraction " + num(contraction);
    return o;
}

Outcome suN_dynamics() {
    Outcome o;
    const std::pair<FixedPointType, FixedPointType> expected{FixedPointType::Node, FixedPointType::Saddle};
    for (int n : {3, 4, 5}) {
        const std::string tag = " n = " + std::to_string(n);
        const auto fps = fixed_point_analysis(n);
        o.require(fps.size() == 2, "fixed points" + tag);
        if (fps.size() != 2) continue;
        for (const auto& fp : fps) {
            o.require(fp.residual <= 1e-10, "residual" + tag);
            o.require(std::abs(fp.location.alpha - suN_fixed_alpha(n, fp.which)) <= 1e-14 * fp.location.alpha,
                      "location" + tag);
            for (int k = 0; k < 2; ++k)
                o.require(std::abs(fp.eigenvalues[k] - fp.closed_form[k]) <= 1e-6, "eigenvalue" + tag);
        }
        o.require(fps[0].type == expected.first && fps[1].type == expected.second, "classification" + tag);
        for (int res : {50, 100, 200}) o.require(interior_zero_search(n, res).pass, "interior zero" + tag);
        o.require(hypotenuse_transversality(n).pass, "hypotenuse" + tag);
        const auto fam = run_ancient_family(n, 4, ancient_run_defaults());
        for (const auto& m : fam.members) {
            o.require(m.run.entered_triangle && !m.run.left_triangle, m.label + " left triangle" + tag);
            o.require(m.positive_ricci && m.run.min_ricci > 0, m.label + " ricci" + tag);
            o.require(m.run.final_state.alpha < 1e-3 && m.run.final_state.beta > 0, m.label + " limit" + tag);
        }
    }
    if (o.pass) o.detail = "n = 3, 4, 5: node and saddle, no interior zero, 5 unstable-manifold runs each";
    return o;
}

Outcome berger() {
    Outcome o;
    for (int l : {100, 200, 400, 800, 1600}) {
        const double s0 = curvature_report(preset_su2(), berger_initial_metric(l)).scal;
        o.require(std::abs(s0) <= 1e-9, "scal(0) l = " + std::to_string(l));
    }
    const auto reps = run_berger_family({100, 400, 1600}, berger_integrator_defaults());
    std::ostringstream d;
    d << "T";
    for (const auto& r : reps) {
        o.require(r.extinction_estimate.has_value(), "no extinction l = " + std::to_string(r.l));
        o.require(r.event_hit && r.beta_event > r.beta0, "event l = " + std::to_string(r.l));
        d << " " << num(r.extinction_estimate.value_or(0));
    }
    o.require(berger_monotonicity(reps).pass, "extinction not increasing");
    if (o.pass) o.detail = d.str();
    return o;
}

Outcome main_estimate_monitor() {
    Outcome o;
    std::vector<std::pair<std::string, FlowTrajectory>> runs;
    runs.emplace_back("round", run_round_sphere(scenario_integrator_defaults()).trajectory);
    for (auto& r : run_berger_family({100, 400, 1600}, berger_integrator_defaults()))
        runs.emplace_back("berger_" + std::to_string(r.l), std::move(r.trajectory));
    runs.emplace_back("hyperbolic", run_hyperbolic(scenario_integrator_defaults()).trajectory);
    std::size_t windows = 0;
    double worst_inv = 0;
    for (const auto& [name, tr] : runs) {
        o.require(tr.has_rm_norm(), name + " lacks rm");
        const double c = empirical_rm_over_ric(tr);
        for (const auto& w : main_estimate_windows(tr, c)) {
            ++windows;
            o.require(w.pass, name + " window " + w.context);
        }
        const auto kind = tr.extinction_estimate ? SolutionClass::FiniteExtinction : SolutionClass::Immortal;
        const auto ref = kind == SolutionClass::Immortal ? std::optional<double>(tr.times.front()) : std::nullopt;
        const auto base = type_products(tr, kind, ref);
        for (double lambda : {0.25, 3.0, 16.0}) {
            const auto sc = type_products(parabolic_rescale(tr, lambda), kind,
                                          ref ? std::optional<double>(lambda * *ref) : std::nullopt);
            if (sc.products.size() != base.products.size()) {
                o.require(false, name + " rescaled size");
                continue;
            }
            for (std::size_t i = 0; i < base.products.size(); ++i)
                worst_inv = std::max(worst_inv, std::abs(sc.products[i] - base.products[i]) /
                                                    std::max(std::abs(base.products[i]), 1e-300));
        }
    }
    o.require(worst_inv <= 1e-9, "rescaling " + num(worst_inv));
    if (o.pass)
        o.detail = std::to_string(windows) + " windows on " + std::to_string(runs.size()) +
                   " runs, rescaling rel err " + num(worst_inv);
    return o;
}

std::string csv_bundle(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + read_file(f);
    return all;
}

Outcome determinism() {
    Outcome o;
    std::vector<std::string> bundles;
    for (int w : {1, 2, 4}) {
        kernels::set_workers(w);
        const auto dir = testsupport::scratch_dir("acceptance_det_" + std::to_string(w));
        write_berger(dir / "berger", run_berger_family({100, 400}, berger_integrator_defaults()));
        write_portrait(dir / "portrait", run_suN_portrait(4, default_portrait_spec(4)));
        write_ancient_family(dir / "ancient", run_ancient_family(3, 5, ancient_run_defaults()));
        write_gap_family(dir / "gap", run_gap_family({4, 5, 6, 7, 8}));
        write_round_sphere(dir / "round", run_round_sphere(scenario_integrator_defaults()));
        write_hyperbolic(dir / "hyperbolic", run_hyperbolic(scenario_integrator_defaults()));
        SamplerSpec spec;
        spec.seed = 31;
        std::string scan;
        for (const auto& s : kernels::gap_samples_parallel(6, 400, spec))
            scan += format_number(s.weyl_over_rm.value_or(-1)) + "," + format_number(s.rm_norm) + "\n";
        write_file_atomic(dir / "scan.csv", scan);
        bundles.push_back(csv_bundle(dir));
    }
    kernels::set_workers(0);
    o.require(!bundles[0].empty(), "no output");
    for (std::size_t i = 1; i < bundles.size(); ++i) o.require(bundles[i] == bundles[0], "bundle differs");
    if (o.pass) o.detail = "workers 1, 2, 4 byte-identical (" + std::to_string(bundles[0].size()) + " bytes)";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "formula cross-validation", 5, formulas},
        {2, "round sphere exact solution", 0, round_sphere},
        {3, "scalar identities", 0, scalar_identities},
        {4, "gap family", 0, gap_family},
        {5, "decomposition soundness", 30, decomposition},
        {6, "SU(n) dynamics", 0, suN_dynamics},
        {7, "Berger unbounded extinction", 60, berger},
        {8, "main estimate monitor", 0, main_estimate_monitor},
        {9, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && secs >= c.budget) o.require(false, "over time budget " + num(c.budget) + " s");
        if (!o.pass) ++failed;
        std::printf("%s  %d  %-30s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
