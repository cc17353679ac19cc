#include "hrf/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrf/error.hpp"
#include "hrf/io.hpp"
#include "hrf/numeric.hpp"

namespace hrf {

namespace {

constexpr double kFlat = 1e-10;

// Logged quantities in increasing physical time.
struct Series {
    std::vector<double> t, scal, ric, rm;
    bool has_rm = false;
};

Series series_of(const FlowTrajectory& traj) {
    if (traj.reports.empty()) {
        throw Error(ErrorCode::RmNormUnavailable, "trajectory carries no curvature data");
    }
    Series s;
    s.has_rm = traj.has_rm_norm();
    std::vector<std::size_t> order(traj.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (traj.size() > 1 && traj.times.back() < traj.times.front()) std::reverse(order.begin(), order.end());
    for (std::size_t i : order) {
        s.t.push_back(traj.times[i]);
        s.scal.push_back(traj.reports[i].scal);
        s.ric.push_back(traj.reports[i].ric_norm);
        s.rm.push_back(s.has_rm ? *traj.reports[i].rm_norm : std::numeric_limits<double>::quiet_NaN());
    }
    return s;
}

std::size_t nearest_sample(const std::vector<double>& t, double target, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i)
        if (std::abs(t[i] - target) < std::abs(t[best] - target)) best = i;
    return best;
}

std::string window_context(double a, double b) {
    return "window [" + format_sig(a) + ", " + format_sig(b) + "]";
}

}  // namespace

EstimateCheckResult make_check(std::string name, double lhs, double rhs, std::string context) {
    EstimateCheckResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = r.margin >= -1e-9 * (1.0 + std::abs(rhs));
    r.context = std::move(context);
    return r;
}

EstimateCheckResult check_main_estimate(const FlowTrajectory& traj, double a, double b, double c) {
    const Series s = series_of(traj);
    if (!s.has_rm) throw Error(ErrorCode::RmNormUnavailable, "main estimate needs |Rm| samples");
    if (!(a < b) || a < s.t.front() || b > s.t.back()) {
        throw Error(ErrorCode::WindowOutsideTrajectory, window_context(a, b));
    }
    const double k = interpolate(s.t, s.rm, b);
    const double sa = interpolate(s.t, s.scal, a);
    const double sb = interpolate(s.t, s.scal, b);
    const double rhs = std::max(1.0 / (8.0 * (b - a)), 16.0 * c * c * (sb - sa));
    return make_check("main_estimate", k, rhs, window_context(a, b) + ", C = " + format_sig(c));
}

std::vector<EstimateCheckResult> main_estimate_windows(const FlowTrajectory& traj, double c) {
    const Series s = series_of(traj);
    const double t0 = s.t.front(), t1 = s.t.back();
    std::vector<double> points;
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
        points.push_back(s.t[nearest_sample(s.t, t0 + f * (t1 - t0), 0, s.t.size() - 1)]);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<EstimateCheckResult> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            out.push_back(check_main_estimate(traj, points[i], points[j], c));
    return out;
}

double empirical_rm_over_ric(const FlowTrajectory& traj) {
    const Series s = series_of(traj);
    if (!s.has_rm) throw Error(ErrorCode::RmNormUnavailable, "ratio needs |Rm| samples");
    double sup = 0;
    for (std::size_t i = 0; i < s.t.size(); ++i)
        if (s.ric[i] > 0 && s.rm[i] > kFlat) sup = std::max(sup, s.rm[i] / s.ric[i]);
    return sup;
}

std::string to_string(SolutionClass kind) {
    switch (kind) {
        case SolutionClass::FiniteExtinction: return "finite_extinction";
        case SolutionClass::Immortal: return "immortal";
        case SolutionClass::Ancient: return "ancient";
    }
    return "unknown";
}

namespace {

TypeProductSeries build_products(const FlowTrajectory& traj, SolutionClass kind, double reference,
                                 const std::vector<double>& magnitude) {
    TypeProductSeries out;
    out.kind = kind;
    out.reference_time = reference;
    out.min = std::numeric_limits<double>::infinity();
    out.max = 0;
    bool all_flat = true;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        double span = 0;
        switch (kind) {
            case SolutionClass::FiniteExtinction: span = reference - t; break;
            case SolutionClass::Immortal: span = t - reference; break;
            case SolutionClass::Ancient: span = std::abs(t - reference); break;
        }
        if (span < 0) continue;
        const double p = magnitude[i] * span;
        if (std::abs(magnitude[i]) > kFlat) all_flat = false;
        out.times.push_back(t);
        out.products.push_back(p);
        out.min = std::min(out.min, p);
        out.max = std::max(out.max, p);
    }
    if (out.products.empty()) out.min = 0;
    out.flat = all_flat;
    return out;
}

}  // namespace

TypeProductSeries type_products(const FlowTrajectory& traj, SolutionClass kind,
                                std::optional<double> reference) {
    if (!traj.has_rm_norm()) throw Error(ErrorCode::RmNormUnavailable, "type products need |Rm| samples");
    double ref;
    if (reference) {
        ref = *reference;
    } else if (kind == SolutionClass::FiniteExtinction) {
        if (!traj.extinction_estimate) {
            throw Error(ErrorCode::InvalidOptions, "run has no extinction estimate; pass T explicitly");
        }
        ref = *traj.extinction_estimate;
    } else {
        ref = traj.times.front();
    }
    std::vector<double> rm;
    for (const auto& r : traj.reports) rm.push_back(*r.rm_norm);
    return build_products(traj, kind, ref, rm);
}

TypeProductSeries scalar_type_products(const FlowTrajectory& traj, std::optional<double> extinction) {
    if (traj.reports.empty()) throw Error(ErrorCode::RmNormUnavailable, "no curvature data");
    const auto t = extinction ? extinction : traj.extinction_estimate;
    if (!t) throw Error(ErrorCode::InvalidOptions, "run has no extinction estimate; pass T explicitly");
    std::vector<double> scal;
    for (const auto& r : traj.reports) scal.push_back(r.scal);
    return build_products(traj, SolutionClass::FiniteExtinction, *t, scal);
}

ScalarInequalityReport scalar_inequality_checks(const FlowTrajectory& traj, std::optional<double> c1) {
    const Series s = series_of(traj);
    if (s.t.size() < 3) throw Error(ErrorCode::TooFewSamples, "scalar checks need >= 3 samples");
    const double n = traj.dimension;
    // Window ends sit on stored samples; interpolating would break the equality cases.
    const std::size_t last = s.t.size() - 1;
    const std::size_t mid = nearest_sample(s.t, 0.5 * (s.t.front() + s.t.back()), 1, last - 1);
    const std::array<std::pair<std::size_t, std::size_t>, 3> windows{{{0, mid}, {mid, last}, {0, last}}};

    ScalarInequalityReport rep;
    for (const auto& [ia, ib] : windows) {
        const double a = s.t[ia], b = s.t[ib];
        const std::string ctx = window_context(a, b);
        const double sa = s.scal[ia], sb = s.scal[ib];
        const double ra = s.ric[ia], rb = s.ric[ib];
        auto vanishes = [](double scal, double ric) { return std::abs(scal) <= 1e-9 * std::max(1.0, ric); };

        if (sa > 0 && !vanishes(sa, ra)) {
            rep.results.push_back(make_check("scal_pos", sa, 0.5 * n / (b - a), ctx));
        }
        if (sb < 0 && !vanishes(sb, rb)) {
            rep.results.push_back(make_check("scal_neg", -sb, 0.5 * n / (b - a), ctx));
        }

        // Reciprocal forms need scal to keep one sign on the closed window.
        bool one_sign = !vanishes(sa, ra) && !vanishes(sb, rb) && (sa > 0) == (sb > 0);
        double sup_rate = 0;
        for (std::size_t i = ia; i <= ib && one_sign; ++i) {
            if (vanishes(s.scal[i], s.ric[i]) || (s.scal[i] > 0) != (sa > 0)) one_sign = false;
            else sup_rate = std::max(sup_rate, 2.0 * s.ric[i] * s.ric[i] / (s.scal[i] * s.scal[i]));
        }
        if (!one_sign) {
            rep.skipped.emplace_back("reciprocal_lower", "SignChangeInWindow " + ctx);
            rep.skipped.emplace_back("reciprocal_upper", "SignChangeInWindow " + ctx);
            continue;
        }
        const double recip = -1.0 / sb + 1.0 / sa;
        rep.results.push_back(make_check("reciprocal_lower", 2.0 / n * (b - a), recip, ctx));
        const double c = c1.value_or(sup_rate);
        rep.results.push_back(
            make_check("reciprocal_upper", recip, c * (b - a), ctx + ", C1 = " + format_sig(c)));
    }
    return rep;
}

ScalarEvolutionCheck scalar_evolution_check(const FlowTrajectory& traj) {
    const Series s = series_of(traj);
    const double n = traj.dimension;
    const auto ds = stencil_derivative(s.t, s.scal, 7);
    ScalarEvolutionCheck out;
    out.min_comparison_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (std::isnan(ds[i])) continue;
        const double exact = 2.0 * s.ric[i] * s.ric[i];
        if (exact > 0) out.max_relative_error = std::max(out.max_relative_error, std::abs(ds[i] - exact) / exact);
        const double sc = s.scal[i];
        out.min_comparison_margin =
            std::min(out.min_comparison_margin, ds[i] - 2.0 / n * sc * sc + 1e-6 * (1 + sc * sc));
        ++out.samples_checked;
    }
    if (out.samples_checked == 0) throw Error(ErrorCode::TooFewSamples, "no interior samples");
    return out;
}

DoublingReport doubling_checks(const FlowTrajectory& traj, double ricci_constant) {
    if (!(ricci_constant > 0)) throw Error(ErrorCode::InvalidOptions, "doubling constant must be positive");
    const Series s = series_of(traj);
    const double lambda = s.ric.front();
    if (!(lambda > kFlat)) throw Error(ErrorCode::FlatSolution, "|Ric(0)| = 0");

    DoublingReport rep;
    // Parabolic rescaling g -> lambda g(t/lambda) makes |Ric(0)| = 1.
    std::vector<double> tau(s.t.size()), ric(s.t.size());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        tau[i] = lambda * (s.t[i] - s.t.front());
        ric[i] = s.ric[i] / lambda;
    }
    for (std::size_t i = 1; i < tau.size() && !rep.first_doubling_time; ++i) {
        if (ric[i] >= 2.0) {
            const double w = (2.0 - ric[i - 1]) / (ric[i] - ric[i - 1]);
            rep.first_doubling_time = tau[i - 1] + w * (tau[i] - tau[i - 1]);
            rep.empirical_constant = 1.0 / *rep.first_doubling_time;
        }
    }
    const double horizon = 1.0 / ricci_constant;
    double worst = 0;
    for (std::size_t i = 0; i < tau.size() && tau[i] <= horizon; ++i) worst = std::max(worst, ric[i]);
    if (horizon <= tau.back()) worst = std::max(worst, interpolate(tau, ric, horizon));
    rep.results.push_back(make_check("ricci_doubling", worst, 2.0,
                                     "t <= 1/C = " + format_sig(horizon) + " after rescaling"));

    if (s.has_rm) {
        double worst_margin = std::numeric_limits<double>::infinity();
        EstimateCheckResult worst_check = make_check("rm_doubling", 0, 0, "no window fits");
        for (std::size_t b = 1; b < s.t.size(); ++b) {
            const double k = s.rm[b];
            if (!(k > kFlat)) continue;
            const double w = s.t[b] - 1.0 / (8.0 * k);
            if (w < s.t.front()) continue;
            double lowest = interpolate(s.t, s.rm, w);
            for (std::size_t i = b; i-- > 0 && s.t[i] > w;) lowest = std::min(lowest, s.rm[i]);
            const auto check = make_check("rm_doubling", 0.5 * k, lowest,
                                          "worst window ending at t = " + format_sig(s.t[b]));
            if (check.margin / (1.0 + std::abs(check.rhs)) < worst_margin) {
                worst_margin = check.margin / (1.0 + std::abs(check.rhs));
                worst_check = check;
            }
        }
        rep.results.push_back(worst_check);
    }
    return rep;
}

GapConstants empirical_gap_constants(const std::vector<GapSampleInput>& samples) {
    if (samples.empty()) throw Error(ErrorCode::EmptySampleSet, "no samples");
    GapConstants out;
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        double rm = 0, ric = 0;
        std::optional<double> weyl_ratio;
        if (const auto* m = std::get_if<MetricSample>(&samples[idx])) {
            const auto rep = curvature_report(m->space, m->x);
            if (!rep.rm_norm) throw Error(ErrorCode::RmNormUnavailable, "metric sample is not three-dimensional");
            rm = *rep.rm_norm;
            ric = rep.ric_norm;
            weyl_ratio = 0.0;  // Weyl vanishes in dimension three
        } else {
            const auto& alg = std::get<AlmostAbelianAlgebra>(samples[idx]);
            const auto curv = almost_abelian_curvature(alg);
            const auto dec = decompose(curv.rm, curv.ricci, curv.scal);
            rm = dec.rm_norm;
            ric = dec.ric_norm;
            weyl_ratio = dec.weyl_over_rm;
        }
        if (rm < kFlat) continue;
        ++out.used;
        if (ric > 0 && rm / ric > out.sup_rm_over_ric) {
            out.sup_rm_over_ric = rm / ric;
            out.rm_over_ric_witness = idx;
        }
        if (weyl_ratio && (!out.sup_weyl_over_rm || *weyl_ratio > *out.sup_weyl_over_rm)) {
            out.sup_weyl_over_rm = weyl_ratio;
            out.weyl_witness = idx;
        }
    }
    if (out.used == 0) throw Error(ErrorCode::EmptySampleSet, "all samples are flat");
    return out;
}

}  // namespace hrf
