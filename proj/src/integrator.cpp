#include "hrf/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hrf/error.hpp"

namespace hrf {

std::string to_string(TerminationKind kind) {
    switch (kind) {
        case TerminationKind::ReachedEnd: return "ReachedEnd";
        case TerminationKind::Extinction: return "Extinction";
        case TerminationKind::CurvatureBlowUp: return "CurvatureBlowUp";
        case TerminationKind::EventHit: return "EventHit";
        case TerminationKind::StepUnderflow: return "StepUnderflow";
    }
    return "Unknown";
}

void IntegratorOptions::validate() const {
    auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidOptions, msg); };
    if (!(rel_tol > 0 && rel_tol < 1)) bad("rel_tol must lie in (0, 1)");
    if (!(abs_tol > 0 && abs_tol < 1)) bad("abs_tol must lie in (0, 1)");
    if (!(min_step > 0) || !(max_step > 0)) bad("step bounds must be positive");
    if (!(min_step < max_step)) bad("min_step must be smaller than max_step");
    if (!(blowup_threshold > 0)) bad("blowup_threshold must be positive");
    if (!(max_relative_change >= 0)) bad("max_relative_change must be >= 0");
    if (!(event_tol > 0)) bad("event_tol must be positive");
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) bad("time span must be finite");
    if (direction == Direction::Forward && !(t_end > t_start)) bad("forward run needs t_end > t_start");
    if (direction == Direction::Backward && !(t_end < t_start)) bad("backward run needs t_end < t_start");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
public:
    Stepper(const OdeSystem& sys, double sign, const IntegratorOptions& opts)
        : sys_(sys), sign_(sign), opts_(opts), n_(sys.dim) {
        for (auto& k : k_) k.resize(n_);
        tmp_.resize(n_);
    }

    // Evaluates the signed field; false if the field is undefined or non-finite.
    bool eval(std::span<const double> y, std::span<double> out) const {
        try {
            sys_.rhs(y, out);
        } catch (const Error&) {
            return false;
        }
        for (auto& v : out) {
            v *= sign_;
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    // One trial step of size h from (y, f0). On success y_new/f_new hold the 5th
    // order solution and its derivative, err the scaled max-norm error estimate.
    bool step(const std::vector<double>& y, const std::vector<double>& f0, double h,
              std::vector<double>& y_new, std::vector<double>& f_new, double& err) {
        const auto& k1 = f0;
        auto stage = [&](std::vector<double>& out, auto combine) {
            for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * combine(i);
            return eval(tmp_, out);
        };
        if (!stage(k_[1], [&](std::size_t i) { return a21 * k1[i]; })) return false;
        if (!stage(k_[2], [&](std::size_t i) { return a31 * k1[i] + a32 * k_[1][i]; })) return false;
        if (!stage(k_[3], [&](std::size_t i) {
                return a41 * k1[i] + a42 * k_[1][i] + a43 * k_[2][i];
            }))
            return false;
        if (!stage(k_[4], [&](std::size_t i) {
                return a51 * k1[i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i];
            }))
            return false;
        if (!stage(k_[5], [&](std::size_t i) {
                return a61 * k1[i] + a62 * k_[1][i] + a63 * k_[2][i] + a64 * k_[3][i] +
                       a65 * k_[4][i];
            }))
            return false;
        y_new.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k_[2][i] + b4 * k_[3][i] + b5 * k_[4][i] +
                                   b6 * k_[5][i]);
            if (!std::isfinite(y_new[i])) return false;
        }
        if (sys_.admissible && !sys_.admissible(y_new)) return false;
        f_new.resize(n_);
        if (!eval(y_new, f_new)) return false;
        err = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] +
                                  e6 * k_[5][i] + e7 * f_new[i]);
            const double sc =
                opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        return true;
    }

private:
    const OdeSystem& sys_;
    double sign_;
    const IntegratorOptions& opts_;
    std::size_t n_;
    std::array<std::vector<double>, 6> k_;
    std::vector<double> tmp_;
};

double relative_change_cap(const std::vector<double>& y, const std::vector<double>& f,
                           double fraction) {
    if (fraction <= 0) return std::numeric_limits<double>::infinity();
    double ymax = 0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    // a zero state has no scale to be relative to
    if (ymax == 0) return std::numeric_limits<double>::infinity();
    const double floor = 1e-3 * ymax;
    double cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double rate = std::abs(f[i]);
        if (rate > 0) cap = std::min(cap, fraction * std::max(std::abs(y[i]), floor) / rate);
    }
    return cap;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

OdeSolution integrate_ode(const OdeSystem& system, std::vector<double> y0,
                          const IntegratorOptions& opts) {
    opts.validate();
    if (y0.size() != system.dim) throw Error(ErrorCode::InvalidOptions, "initial state size");
    if (system.admissible && !system.admissible(y0)) {
        throw Error(ErrorCode::DomainViolation, "initial state is not admissible");
    }

    const double sign = opts.direction == Direction::Forward ? 1.0 : -1.0;
    const double span = std::abs(opts.t_end - opts.t_start);
    Stepper stepper(system, sign, opts);

    OdeSolution sol;
    std::vector<double> y = std::move(y0);
    std::vector<double> f(system.dim);
    if (!stepper.eval(y, f)) throw Error(ErrorCode::DomainViolation, "field undefined at initial state");

    double t = opts.t_start;
    double tau = 0;  // elapsed |t - t_start|
    sol.times.push_back(t);
    sol.states.push_back(y);
    if (system.observer) system.observer(t, y);

    std::vector<double> g_prev;
    for (const auto& ev : opts.events) g_prev.push_back(ev.fn(y));

    if (system.collapsed && system.collapsed(y)) {
        sol.termination = TerminationKind::Extinction;
        return sol;
    }
    if (system.monitor && system.monitor(y) > opts.blowup_threshold) {
        sol.termination = TerminationKind::CurvatureBlowUp;
        return sol;
    }

    double h;
    {
        double d0 = 0, d1 = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double sc = opts.abs_tol + opts.rel_tol * std::abs(y[i]);
            d0 = std::max(d0, std::abs(y[i]) / sc);
            d1 = std::max(d1, std::abs(f[i]) / sc);
        }
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min({h, opts.max_step, span});
    }

    std::vector<double> y_new, f_new;
    double err_prev = 1e-4;
    bool rejected_last = false;

    while (true) {
        if (sol.accepted_steps >= opts.max_steps) {
            sol.termination = TerminationKind::StepUnderflow;
            sol.note = "step budget exhausted";
            return sol;
        }
        const double remaining = span - tau;
        if (remaining <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, span)) {
            sol.termination = TerminationKind::ReachedEnd;
            return sol;
        }
        h = std::min({h, opts.max_step, remaining, relative_change_cap(y, f, opts.max_relative_change)});
        const bool last_step = h >= remaining;
        if (t + sign * h == t || h < opts.min_step) {
            sol.termination = TerminationKind::StepUnderflow;
            sol.note = "step size below resolution at t = " + std::to_string(t);
            return sol;
        }

        double err = 0;
        if (!stepper.step(y, f, h, y_new, f_new, err)) {
            h *= 0.5;
            ++sol.rejected_steps;
            rejected_last = true;
            continue;
        }
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            ++sol.rejected_steps;
            rejected_last = true;
            continue;
        }

        const double t_new = last_step ? opts.t_end : t + sign * h;

        // Events: locate sign changes inside the accepted step by re-stepping
        // from y with a fraction of h, keeping the bracket side after the change.
        std::vector<EventRecord> found;
        std::vector<double> g_new(opts.events.size());
        for (std::size_t e = 0; e < opts.events.size(); ++e) {
            g_new[e] = opts.events[e].fn(y_new);
            const int s0 = sign_of(g_prev[e]);
            const int s1 = sign_of(g_new[e]);
            if (s0 == 0 || s0 == s1) continue;
            double lo = 0, hi = 1;
            std::vector<double> y_hi = y_new, y_mid, f_mid;
            if (s1 != 0) {
                for (int it = 0; it < 200 && (hi - lo) * h > opts.event_tol; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    double dummy;
                    if (!stepper.step(y, f, mid * h, y_mid, f_mid, dummy)) break;
                    const int sm = sign_of(opts.events[e].fn(y_mid));
                    if (sm == s0) {
                        lo = mid;
                    } else {
                        hi = mid;
                        y_hi = y_mid;
                        if (sm == 0) break;
                    }
                }
            }
            const double te = hi >= 1.0 ? t_new : t + sign * hi * h;
            found.push_back({opts.events[e].name, te, y_hi});
        }
        std::stable_sort(found.begin(), found.end(), [&](const EventRecord& a, const EventRecord& b) {
            return sign * a.time < sign * b.time;
        });

        std::optional<EventRecord> terminal;
        for (const auto& rec : found) {
            const auto it = std::find_if(opts.events.begin(), opts.events.end(),
                                         [&](const EventSpec& s) { return s.name == rec.name; });
            sol.events.push_back(rec);
            if (it != opts.events.end() && it->terminal) {
                terminal = rec;
                break;
            }
        }

        ++sol.accepted_steps;
        if (terminal) {
            if (terminal->time != t) {
                sol.times.push_back(terminal->time);
                sol.states.push_back(terminal->state);
                if (system.observer) system.observer(terminal->time, terminal->state);
            }
            sol.termination = TerminationKind::EventHit;
            sol.terminal_event = terminal;
            return sol;
        }

        tau += h;
        t = t_new;
        y.swap(y_new);
        f.swap(f_new);
        g_prev = g_new;
        sol.times.push_back(t);
        sol.states.push_back(y);
        if (system.observer) system.observer(t, y);

        if (system.collapsed && system.collapsed(y)) {
            sol.termination = TerminationKind::Extinction;
            return sol;
        }
        if (system.monitor && system.monitor(y) > opts.blowup_threshold) {
            sol.termination = TerminationKind::CurvatureBlowUp;
            return sol;
        }
        if (last_step) {
            sol.termination = TerminationKind::ReachedEnd;
            return sol;
        }

        const double e = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
        fac = std::clamp(fac, 0.2, 5.0);
        if (rejected_last) fac = std::min(fac, 1.0);
        h *= fac;
        err_prev = e;
        rejected_last = false;
    }
}

}  // namespace hrf
