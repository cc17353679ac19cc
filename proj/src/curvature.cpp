#include "hrf/curvature.hpp"

#include <cmath>

#include "hrf/error.hpp"

namespace hrf {

double CurvatureReport::ric0_norm_sq() const {
    // sum d_m (r_m - scal/N)^2 = |Ric|^2 - scal^2/N
    return std::max(0.0, ric_norm * ric_norm - scal * scal / total_dim);
}

void validate_metric(const HomogeneousSpaceData& space, std::span<const double> x) {
    if (x.size() != space.module_count()) {
        throw Error(ErrorCode::NonPositiveMetric, "metric has " + std::to_string(x.size()) +
                                                      " entries, space has " +
                                                      std::to_string(space.module_count()) +
                                                      " modules");
    }
    for (double v : x) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::NonPositiveMetric, "metric entries must be positive");
        }
    }
}

std::vector<double> ricci_diagonal(const HomogeneousSpaceData& space, std::span<const double> x) {
    validate_metric(space, x);
    const std::size_t l = space.module_count();
    // long double keeps the cancellation between the three terms from costing digits
    std::vector<long double> second(l, 0.0L);
    std::vector<long double> third(l, 0.0L);

    // Each sorted triple {a,b,c} stands for all its ordered arrangements. For an
    // arrangement (j,k,m) the module m receives [jkm] x_k/(x_m x_j) and [jkm] x_m/(x_j x_k).
    for (const auto& [t, v] : space.structure_constants().entries()) {
        const std::array<int, 3> idx{t[0] - 1, t[1] - 1, t[2] - 1};
        std::array<int, 3> p{0, 1, 2};
        // Enumerate distinct permutations of the multiset.
        std::array<std::array<int, 3>, 6> seen{};
        int nseen = 0;
        do {
            const std::array<int, 3> arr{idx[p[0]], idx[p[1]], idx[p[2]]};
            bool dup = false;
            for (int s = 0; s < nseen; ++s) dup = dup || seen[s] == arr;
            if (dup) continue;
            seen[nseen++] = arr;
            const auto j = static_cast<std::size_t>(arr[0]);
            const auto k = static_cast<std::size_t>(arr[1]);
            const auto m = static_cast<std::size_t>(arr[2]);
            const long double xj = x[j], xk = x[k], xm = x[m];
            second[m] += v * xk / (xm * xj);
            third[m] += v * xm / (xj * xk);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    std::vector<double> r(l);
    for (std::size_t m = 0; m < l; ++m) {
        const long double d = space.summands()[m].dim;
        const long double b = space.summands()[m].killing_b;
        r[m] = static_cast<double>(b / (2.0L * x[m]) - second[m] / (2.0L * d) + third[m] / (4.0L * d));
    }
    return r;
}

CurvatureReport curvature_report(const HomogeneousSpaceData& space, std::span<const double> x) {
    CurvatureReport rep;
    rep.r = ricci_diagonal(space, x);
    rep.total_dim = space.total_dim();
    for (const auto& s : space.summands()) rep.dims.push_back(s.dim);
    const std::size_t l = space.module_count();
    double norm_sq = 0;
    double log_vol = 0;
    for (std::size_t m = 0; m < l; ++m) {
        const double d = space.summands()[m].dim;
        rep.scal += d * rep.r[m];
        norm_sq += d * rep.r[m] * rep.r[m];
        log_vol += d * std::log(x[m]);
    }
    rep.ric_norm = std::sqrt(norm_sq);
    rep.volume_power = std::exp(log_vol);
    rep.r0.resize(l);
    for (std::size_t m = 0; m < l; ++m) rep.r0[m] = rep.r[m] - rep.scal / rep.total_dim;
    if (rep.total_dim == 3) rep.rm_norm = rm_norm_dim3(rep);
    return rep;
}

double rm_norm_dim3(const CurvatureReport& report) {
    if (report.total_dim != 3) {
        throw Error(ErrorCode::WrongDimension,
                    "full curvature norm needs dimension 3, got " + std::to_string(report.total_dim));
    }
    double ric0_sq = 0;
    if (!report.r0.empty() && report.dims.size() == report.r0.size()) {
        // Explicit sum of squares is more accurate than |Ric|^2 - scal^2/3 near Einstein metrics.
        for (std::size_t m = 0; m < report.r0.size(); ++m)
            ric0_sq += report.dims[m] * report.r0[m] * report.r0[m];
    } else {
        ric0_sq = report.ric0_norm_sq();
    }
    return std::sqrt(report.scal * report.scal / 12.0 + ric0_sq);
}

}  // namespace hrf
