#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hrf/curvature.hpp"
#include "hrf/error.hpp"
#include "support.hpp"

using namespace hrf;
using testsupport::rel_err;

namespace {

// Oracles in long double.
std::array<double, 3> berger_closed(const std::vector<double>& v) {
    const long double x[3] = {v[0], v[1], v[2]};
    const long double p = 2.0L / (x[0] * x[1] * x[2]);
    return {static_cast<double>(p * (x[0] * x[0] - (x[1] - x[2]) * (x[1] - x[2]))),
            static_cast<double>(p * (x[1] * x[1] - (x[0] - x[2]) * (x[0] - x[2]))),
            static_cast<double>(p * (x[2] * x[2] - (x[0] - x[1]) * (x[0] - x[1])))};
}

std::array<double, 3> suN_closed(int n, const std::vector<double>& v) {
    const long double x1 = v[0], x2 = v[1], x3 = v[2], N = n;
    return {static_cast<double>(2 * N / x1 - N * (N - 2) / (2 * (N - 1)) * x2 / (x1 * x1) -
                                N / (2 * (N - 1)) * x3 / (x1 * x1)),
            static_cast<double>(2 * (N - 1) / x2 + x2 / (x1 * x1)), static_cast<double>(N * x3 / (x1 * x1))};
}

}  // namespace

TEST_CASE("round and Berger examples") {
    const auto s = preset_su2();
    const auto r = ricci_diagonal(s, std::vector<double>{1, 1, 1});
    for (double v : r) CHECK(v == doctest::Approx(2.0));
    const auto q = ricci_diagonal(s, DiagonalMetric{{4, 1, 1}});
    CHECK(q[0] == doctest::Approx(8.0));
    CHECK(q[1] == doctest::Approx(-4.0));
    CHECK(q[2] == doctest::Approx(-4.0));
}

TEST_CASE("su2 against closed form, 1000 metrics") {
    std::mt19937_64 rng(11);
    const auto s = preset_su2();
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto x = testsupport::random_metric(rng, 3);
        const auto r = ricci_diagonal(s, std::span<const double>(x));
        const auto c = berger_closed(x);
        for (int m = 0; m < 3; ++m) worst = std::max(worst, std::abs(r[m] - c[m]) / std::max(std::abs(c[m]), 1e-300));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("suN example against closed form, 1000 metrics each") {
    for (int n : {3, 4, 5}) {
        std::mt19937_64 rng(100 + n);
        const auto s = preset_suN_example(n);
        double worst = 0;
        for (int k = 0; k < 1000; ++k) {
            const auto x = testsupport::random_metric(rng, 3);
            const auto r = ricci_diagonal(s, std::span<const double>(x));
            const auto c = suN_closed(n, x);
            for (int m = 0; m < 3; ++m) worst = std::max(worst, std::abs(r[m] - c[m]) / std::abs(c[m]));
        }
        CAPTURE(n);
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("scale covariance and permutation symmetry") {
    std::mt19937_64 rng(5);
    const auto s = preset_su2();
    for (int k = 0; k < 200; ++k) {
        auto x = testsupport::random_metric(rng, 3);
        const auto r = ricci_diagonal(s, std::span<const double>(x));
        std::vector<double> y = x;
        for (auto& v : y) v *= 3.5;
        const auto ry = ricci_diagonal(s, std::span<const double>(y));
        for (int m = 0; m < 3; ++m) CHECK(rel_err(ry[m] * 3.5, r[m]) < 1e-13);
        const std::vector<double> p{x[2], x[0], x[1]};
        const auto rp = ricci_diagonal(s, std::span<const double>(p));
        CHECK(rel_err(rp[0], r[2]) < 1e-13);
        CHECK(rel_err(rp[1], r[0]) < 1e-13);
        CHECK(rel_err(rp[2], r[1]) < 1e-13);
    }
}

TEST_CASE("curvature report") {
    const auto s = preset_su2();
    const auto round = curvature_report(s, std::vector<double>{1, 1, 1});
    CHECK(round.scal == doctest::Approx(6.0));
    CHECK(round.ric_norm == doctest::Approx(2.0 * std::sqrt(3.0)));
    REQUIRE(round.rm_norm);
    CHECK(*round.rm_norm == doctest::Approx(std::sqrt(3.0)));
    CHECK(round.ric0_norm_sq() == doctest::Approx(0.0));

    const auto b = curvature_report(s, std::vector<double>{4, 1, 1});
    CHECK(b.scal == doctest::Approx(0.0));
    CHECK(b.ric_norm * b.ric_norm == doctest::Approx(96.0));
    CHECK(*b.rm_norm == doctest::Approx(4.0 * std::sqrt(6.0)));
    CHECK(b.volume_power == doctest::Approx(4.0));

    const auto sun = curvature_report(preset_suN_example(3), std::vector<double>{1, 2, 3});
    CHECK(!sun.rm_norm);
    CHECK(sun.total_dim == 12);
    CHECK(sun.volume_power == doctest::Approx(std::pow(2.0, 3) * 3));
    double weighted = 0;
    for (int m = 0; m < 3; ++m) weighted += sun.dims[m] * sun.r0[m];
    CHECK(weighted == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rm norm in dimension three matches |Ric0|^2 + scal^2/12") {
    std::mt19937_64 rng(9);
    const auto s = preset_su2();
    for (int k = 0; k < 100; ++k) {
        const auto x = testsupport::random_metric(rng, 3);
        const auto rep = curvature_report(s, x);
        const double expect = std::sqrt(rep.scal * rep.scal / 12 + rep.ric0_norm_sq());
        CHECK(rel_err(*rep.rm_norm, expect) < 1e-12);
        // Scale covariance of the whole report.
        std::vector<double> y = x;
        for (auto& v : y) v *= 2;
        CHECK(rel_err(curvature_report(s, y).scal * 2, rep.scal) < 1e-13);
    }
}

TEST_CASE("metric validation") {
    const auto s = preset_su2();
    auto code = [&](std::vector<double> x) {
        try {
            validate_metric(s, x);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code({1, -1, 1}) == ErrorCode::NonPositiveMetric);
    CHECK(code({1, 0, 1}) == ErrorCode::NonPositiveMetric);
    CHECK(code({1, 1}) == ErrorCode::NonPositiveMetric);
    CHECK(code({1, std::nan(""), 1}) == ErrorCode::NonPositiveMetric);
    CHECK_THROWS_AS(ricci_diagonal(s, std::vector<double>{1, 1, -2}), Error);
    const auto rep = curvature_report(preset_suN_example(3), std::vector<double>{1, 1, 1});
    try {
        rm_norm_dim3(rep);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongDimension);
    }
}
