#pragma once

// Adaptive Dormand-Prince 5(4) integrator for autonomous systems with PI step
// control, positivity-aware step rejection, sign-change events and blow-up
// monitoring. Integration runs forward or backward in time.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hrf {

enum class Direction { Forward, Backward };

enum class TerminationKind { ReachedEnd, Extinction, CurvatureBlowUp, EventHit, StepUnderflow };

std::string to_string(TerminationKind kind);

struct EventSpec {
    std::string name;
    std::function<double(std::span<const double>)> fn;
    bool terminal = true;
};

struct EventRecord {
    std::string name;
    double time = 0;
    std::vector<double> state;
};

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.05;
    double min_step = 1e-18;
    double blowup_threshold = 1e12;
    double t_start = 0;
    double t_end = 1;
    Direction direction = Direction::Forward;
    // Caps |h f_i| at this fraction of max(|y_i|, 1e-3 |y|_inf); 0 disables.
    double max_relative_change = 0.002;
    // Absolute time tolerance for event bisection.
    double event_tol = 1e-10;
    std::size_t max_steps = 5'000'000;
    std::vector<EventSpec> events;

    // Throws InvalidOptions.
    void validate() const;
};

struct OdeSystem {
    std::size_t dim = 0;
    std::function<void(std::span<const double> y, std::span<double> dydt)> rhs;
    // States failing this are rejected and the step halved.
    std::function<bool(std::span<const double>)> admissible;
    // True once the state has collapsed (terminates with Extinction).
    std::function<bool(std::span<const double>)> collapsed;
    // Curvature-type norm compared against blowup_threshold.
    std::function<double(std::span<const double>)> monitor;
    // Called after every accepted step (and for the initial state).
    std::function<void(double, std::span<const double>)> observer;
};

struct OdeSolution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    TerminationKind termination = TerminationKind::ReachedEnd;
    std::vector<EventRecord> events;       // in time order
    std::optional<EventRecord> terminal_event;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::string note;
};

OdeSolution integrate_ode(const OdeSystem& system, std::vector<double> y0,
                          const IntegratorOptions& opts);

}  // namespace hrf
