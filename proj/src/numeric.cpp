#include "hrf/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "hrf/error.hpp"

namespace hrf {

namespace {

// Fornberg's recursion for first-derivative weights at 0 on nodes x[0..n).
template <std::size_t N>
std::array<double, N> first_derivative_weights(const std::array<double, N>& x) {
    std::array<std::array<double, 2>, N> c{};
    double c1 = 1.0;
    double c4 = x[0];
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < N; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::array<double, N> w{};
    for (std::size_t i = 0; i < N; ++i) w[i] = c[i][1];
    return w;
}

template <std::size_t N>
std::vector<double> derivative_impl(std::span<const double> t, std::span<const double> y) {
    constexpr std::size_t half = N / 2;
    std::vector<double> out(t.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = half; i + half < t.size(); ++i) {
        std::array<double, N> nodes{};
        for (std::size_t k = 0; k < N; ++k) nodes[k] = t[i - half + k] - t[i];
        bool distinct = true;
        for (std::size_t k = 1; k < N; ++k) distinct = distinct && nodes[k] != nodes[k - 1];
        if (!distinct) continue;
        const auto w = first_derivative_weights(nodes);
        double d = 0;
        for (std::size_t k = 0; k < N; ++k) d += w[k] * y[i - half + k];
        out[i] = d;
    }
    return out;
}

}  // namespace

std::vector<double> stencil_derivative(std::span<const double> t, std::span<const double> y,
                                       int points) {
    if (t.size() != y.size()) throw Error(ErrorCode::InvalidOptions, "stencil size mismatch");
    switch (points) {
        case 3: return derivative_impl<3>(t, y);
        case 5: return derivative_impl<5>(t, y);
        case 7: return derivative_impl<7>(t, y);
        default: throw Error(ErrorCode::InvalidOptions, "stencil must have 3, 5 or 7 points");
    }
}

double interpolate(std::span<const double> t, std::span<const double> y, double s) {
    if (t.empty()) throw Error(ErrorCode::WindowOutsideTrajectory, "empty trajectory");
    const bool forward = t.size() < 2 || t.back() >= t.front();
    auto before = [&](double a, double b) { return forward ? a < b : a > b; };
    if (before(s, t.front()) || before(t.back(), s)) {
        throw Error(ErrorCode::WindowOutsideTrajectory, "time outside the stored samples");
    }
    // First sample not before s.
    const auto it = forward ? std::lower_bound(t.begin(), t.end(), s)
                            : std::lower_bound(t.begin(), t.end(), s, std::greater<>());
    const auto k = static_cast<std::size_t>(it - t.begin());
    if (k == 0 || t[k] == s) return y[k];
    const double w = (s - t[k - 1]) / (t[k] - t[k - 1]);
    return y[k - 1] + w * (y[k] - y[k - 1]);
}

}  // namespace hrf
