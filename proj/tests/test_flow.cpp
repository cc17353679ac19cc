#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hrf/error.hpp"
#include "hrf/flow.hpp"
#include "hrf/scenarios.hpp"
#include "support.hpp"

using namespace hrf;
using testsupport::rel_err;

TEST_CASE("field examples") {
    const auto s = preset_su2();
    for (double v : field_unnormalized(s, std::vector<double>{1, 1, 1})) CHECK(v == doctest::Approx(-4.0));
    const auto v = field_unnormalized(s, std::vector<double>{4, 1, 1});
    CHECK(v[0] == doctest::Approx(-64.0));
    CHECK(v[1] == doctest::Approx(8.0));
    CHECK(v[2] == doctest::Approx(8.0));
    for (double w : field_normalized(s, std::vector<double>{1, 1, 1})) CHECK(std::abs(w) < 1e-14);
    CHECK_THROWS_AS(field_unnormalized(s, std::vector<double>{1, 0, 1}), Error);
}

TEST_CASE("normalized field preserves volume") {
    const auto s = preset_su2();
    const auto x = berger_initial_metric(100);
    const auto v = field_normalized(s, x);
    double trace = 0;
    for (int m = 0; m < 3; ++m) trace += v[m] / x[m];
    CHECK(std::abs(trace) < 1e-12);

    const auto sun = preset_suN_example(3);
    const std::vector<double> one{1, 1, 1};
    const auto w = field_normalized(sun, one);
    double norm = 0, weighted = 0;
    for (int m = 0; m < 3; ++m) norm += std::abs(w[m]), weighted += sun.summands()[m].dim * w[m];
    CHECK(norm > 1e-3);
    CHECK(std::abs(weighted) < 1e-12);
}

TEST_CASE("round sphere collapse") {
    auto o = scenario_integrator_defaults();
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, {1, 1, 1}, o);
    CHECK(tr.termination == TerminationKind::Extinction);
    REQUIRE(tr.extinction_estimate);
    CHECK(std::abs(*tr.extinction_estimate - 0.25) < 1e-6);
    for (std::size_t i = 0; i < tr.size(); ++i)
        for (double x : tr.states[i]) CHECK(std::abs(x - (1 - 4 * tr.times[i])) < 1e-8);
    CHECK(tr.has_rm_norm());
    const auto vol = volume_ode_check(tr);
    CHECK(vol.applicable);
    CHECK(vol.max_residual <= 1e-6);
}

TEST_CASE("blow-up beyond the integrator default threshold is still extinction") {
    IntegratorOptions o;
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, {1, 1, 1}, o);
    CHECK(tr.termination == TerminationKind::Extinction);
    REQUIRE(tr.extinction_estimate);
    CHECK(std::abs(*tr.extinction_estimate - 0.25) < 1e-6);
}

TEST_CASE("normalized round sphere is a fixed point") {
    IntegratorOptions o;
    const auto tr = integrate(preset_su2(), FieldKind::Normalized, {1, 1, 1}, o);
    CHECK(tr.termination == TerminationKind::ReachedEnd);
    for (const auto& x : tr.states)
        for (double v : x) CHECK(std::abs(v - 1) < 1e-14);
    CHECK_FALSE(volume_ode_check(tr).applicable);
}

TEST_CASE("Berger event") {
    auto o = berger_integrator_defaults();
    o.events.push_back({"line", [](std::span<const double> x) { return (x[0] + x[2] - x[1]) / x[0]; }, true});
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, berger_initial_metric(100), o);
    CHECK(tr.termination == TerminationKind::EventHit);
    REQUIRE(tr.terminal_event);
    const auto& x = tr.states.back();
    CHECK(std::abs((x[0] + x[2] - x[1]) / x[0]) < 1e-6);
    CHECK(x[2] / x[0] > berger_initial_ratios(100).second);
    CHECK(tr.t_final() > 0);
}

TEST_CASE("Berger volume identity") {
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, berger_initial_metric(100),
                              berger_integrator_defaults());
    const auto vol = volume_ode_check(tr);
    CHECK(vol.max_relative_residual <= 10 * berger_integrator_defaults().rel_tol);
}

TEST_CASE("backward run from a round sphere grows") {
    IntegratorOptions o;
    o.t_start = 0;
    o.t_end = -1;
    o.direction = Direction::Backward;
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, {1, 1, 1}, o);
    CHECK(tr.termination == TerminationKind::ReachedEnd);
    CHECK(std::abs(tr.states.back()[0] - 5.0) < 1e-8);
    CHECK_FALSE(tr.extinction_estimate);
}

TEST_CASE("hyperbolic bracket flow") {
    IntegratorOptions o;
    o.t_end = 5;
    const auto tr = integrate_almost_abelian(AlmostAbelianAlgebra(Eigen::MatrixXd::Identity(2, 2)), o);
    CHECK(tr.termination == TerminationKind::ReachedEnd);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double a = 1 / std::sqrt(1 + 4 * tr.times[i]);
        CHECK(std::abs(tr.states[i][0] - a) < 1e-9);
        CHECK(std::abs(tr.states[i][1]) < 1e-14);
        CHECK(rel_err(tr.reports[i].scal, -6 / (1 + 4 * tr.times[i])) < 1e-9);
    }
}

TEST_CASE("parabolic rescaling") {
    const auto tr = integrate(preset_su2(), FieldKind::Unnormalized, {2, 1, 1}, scenario_integrator_defaults());
    for (double lambda : {0.25, 4.0, 3.0}) {
        const auto sc = parabolic_rescale(tr, lambda);
        CHECK(sc.size() == tr.size());
        for (std::size_t i = 0; i < tr.size(); i += 97) {
            CHECK(rel_err(sc.reports[i].scal * lambda, tr.reports[i].scal) < 1e-12);
            CHECK(rel_err(*sc.reports[i].rm_norm * lambda, *tr.reports[i].rm_norm) < 1e-12);
        }
        CHECK(rel_err(*sc.extinction_estimate, *tr.extinction_estimate * lambda) < 1e-15);
    }
    CHECK_THROWS_AS(parabolic_rescale(tr, -1), Error);
}

TEST_CASE("volume check needs samples") {
    IntegratorOptions o;
    o.t_end = 1e-3;
    o.max_step = 1e-3;
    const auto tr = integrate(preset_su2(), FieldKind::Normalized, {1, 1, 1}, o);
    CHECK(tr.size() < 10);
    CHECK_THROWS_AS(volume_ode_check(tr), Error);
}
