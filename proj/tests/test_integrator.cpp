#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hrf/error.hpp"
#include "hrf/integrator.hpp"
#include "hrf/numeric.hpp"

using namespace hrf;

namespace {

OdeSystem scalar_system(std::function<double(double)> f) {
    OdeSystem s;
    s.dim = 1;
    s.rhs = [f](std::span<const double> y, std::span<double> out) { out[0] = f(y[0]); };
    return s;
}

}  // namespace

TEST_CASE("exponential decay") {
    IntegratorOptions o;
    o.t_end = 2;
    const auto sol = integrate_ode(scalar_system([](double y) { return -y; }), {1.0}, o);
    CHECK(sol.termination == TerminationKind::ReachedEnd);
    CHECK(sol.times.back() == 2.0);
    CHECK(std::abs(sol.states.back()[0] - std::exp(-2.0)) < 1e-10);
    for (std::size_t i = 0; i < sol.times.size(); ++i)
        CHECK(std::abs(sol.states[i][0] - std::exp(-sol.times[i])) < 1e-10);
}

TEST_CASE("backward integration") {
    IntegratorOptions o;
    o.t_start = 1;
    o.t_end = -1;
    o.direction = Direction::Backward;
    const auto sol = integrate_ode(scalar_system([](double y) { return y; }), {1.0}, o);
    CHECK(sol.termination == TerminationKind::ReachedEnd);
    CHECK(sol.times.back() == -1.0);
    CHECK(std::abs(sol.states.back()[0] - std::exp(-2.0)) < 1e-10);
    for (std::size_t i = 1; i < sol.times.size(); ++i) CHECK(sol.times[i] < sol.times[i - 1]);
}

TEST_CASE("terminal and recorded events") {
    IntegratorOptions o;
    o.t_end = 3;
    o.events.push_back({"half", [](std::span<const double> y) { return y[0] - 0.5; }, false});
    o.events.push_back({"two", [](std::span<const double> y) { return y[0] - 2.0; }, true});
    const auto sol = integrate_ode(scalar_system([](double) { return 1.0; }), {0.0}, o);
    CHECK(sol.termination == TerminationKind::EventHit);
    REQUIRE(sol.terminal_event);
    CHECK(sol.terminal_event->name == "two");
    CHECK(std::abs(sol.terminal_event->time - 2.0) < 1e-9);
    REQUIRE(sol.events.size() == 2);
    CHECK(sol.events[0].name == "half");
    CHECK(std::abs(sol.events[0].time - 0.5) < 1e-9);
    CHECK(std::abs(sol.times.back() - 2.0) < 1e-9);
}

TEST_CASE("collapse and blow-up") {
    IntegratorOptions o;
    o.t_end = 2;
    auto s = scalar_system([](double) { return -1.0; });
    s.admissible = [](std::span<const double> y) { return y[0] > 0; };
    s.collapsed = [](std::span<const double> y) { return y[0] < 1e-9; };
    const auto sol = integrate_ode(s, {1.0}, o);
    CHECK(sol.termination == TerminationKind::Extinction);
    CHECK(sol.states.back()[0] > 0);
    CHECK(std::abs(sol.times.back() - 1.0) < 1e-8);

    auto b = scalar_system([](double y) { return y * y; });
    b.monitor = [](std::span<const double> y) { return y[0]; };
    o.blowup_threshold = 1e6;
    const auto bl = integrate_ode(b, {1.0}, o);
    CHECK(bl.termination == TerminationKind::CurvatureBlowUp);
    CHECK(bl.times.back() < 1.0);
    CHECK(bl.times.back() > 1.0 - 1e-5);
}

TEST_CASE("step underflow is a termination, not an exception") {
    IntegratorOptions o;
    o.t_end = 1;
    o.min_step = 1e-6;
    auto s = scalar_system([](double) { return 1.0; });
    s.admissible = [](std::span<const double> y) { return y[0] < 0.5; };
    const auto sol = integrate_ode(s, {0.0}, o);
    CHECK(sol.termination == TerminationKind::StepUnderflow);
    CHECK(sol.states.back()[0] < 0.5);
}

TEST_CASE("invalid options") {
    IntegratorOptions o;
    o.rel_tol = 0;
    CHECK_THROWS_AS(o.validate(), Error);
    o = {};
    o.t_end = 0;
    CHECK_THROWS_AS(o.validate(), Error);
    o = {};
    o.direction = Direction::Backward;
    CHECK_THROWS_AS(o.validate(), Error);
    o = {};
    CHECK_NOTHROW(o.validate());
}

TEST_CASE("relative change cap limits steps") {
    IntegratorOptions o;
    o.t_end = 1;
    o.max_relative_change = 0.01;
    const auto sol = integrate_ode(scalar_system([](double y) { return -y; }), {1.0}, o);
    for (std::size_t i = 1; i < sol.states.size(); ++i) {
        const double change = std::abs(sol.states[i][0] - sol.states[i - 1][0]) / sol.states[i - 1][0];
        CHECK(change <= 0.0101);
    }
}

TEST_CASE("stencil derivatives on a nonuniform grid") {
    std::vector<double> t, y;
    for (int i = 0; i < 60; ++i) {
        const double s = 0.05 * i + 0.001 * (i % 3);
        t.push_back(s);
        y.push_back(std::sin(s));
    }
    for (int p : {3, 5, 7}) {
        const auto d = stencil_derivative(t, y, p);
        CHECK(std::isnan(d.front()));
        double worst = 0;
        for (std::size_t i = p / 2; i + p / 2 < t.size(); ++i) worst = std::max(worst, std::abs(d[i] - std::cos(t[i])));
        CAPTURE(p);
        CHECK(worst < (p == 3 ? 1e-3 : p == 5 ? 1e-5 : 1e-7));
    }
    std::vector<double> rt(t.rbegin(), t.rend()), ry(y.rbegin(), y.rend());
    const auto dr = stencil_derivative(rt, ry, 5);
    CHECK(std::abs(dr[10] - std::cos(rt[10])) < 1e-5);
    CHECK(interpolate(t, y, t[4]) == y[4]);
    CHECK(interpolate(rt, ry, 0.5 * (t[3] + t[4])) == doctest::Approx(0.5 * (y[3] + y[4])));
    CHECK_THROWS_AS(interpolate(t, y, 100.0), Error);
}
