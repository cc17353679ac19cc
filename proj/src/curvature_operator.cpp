#include "hrf/curvature_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hrf/error.hpp"
#include "hrf/kernels.hpp"

namespace hrf {

AlmostAbelianAlgebra::AlmostAbelianAlgebra(Eigen::MatrixXd a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) {
        throw Error(ErrorCode::InvariantViolation, "A must be square");
    }
    if (a_.rows() + 1 < 3) {
        throw Error(ErrorCode::DimensionTooSmall, "almost-abelian algebra needs n >= 3");
    }
    d_ = 0.5 * (a_ + a_.transpose());
    q_ = 0.5 * (a_ - a_.transpose());
}

int wedge_index(int n, int i, int j) {
    // Rows before i contribute (n-1) + (n-2) + ... + (n-i).
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

namespace {

// Adds coefficient * (u ^ v) to column col of the matrix.
void add_wedge(Eigen::MatrixXd& m, int col, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
               double coefficient) {
    const int n = static_cast<int>(u.size());
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
            m(wedge_index(n, k, l), col) += coefficient * (u(k) * v(l) - u(l) * v(k));
}

}  // namespace

Eigen::MatrixXd wedge_product(const Eigen::MatrixXd& s, const Eigen::MatrixXd& t) {
    const int n = static_cast<int>(s.rows());
    const int dim = two_form_dim(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int col = wedge_index(n, i, j);
            add_wedge(m, col, s.col(i), t.col(j), 0.5);
            add_wedge(m, col, t.col(i), s.col(j), 0.5);
        }
    }
    return m;
}

AlmostAbelianCurvature almost_abelian_curvature(const AlmostAbelianAlgebra& alg) {
    const int n = alg.n();
    const int k = n - 1;
    const Eigen::MatrixXd& d = alg.d();
    const Eigen::MatrixXd& q = alg.q();
    const Eigen::MatrixXd d2 = d * d;
    const Eigen::MatrixXd m = d2 + (d * q - q * d);

    // Embed a vector of the abelian ideal (indices 1..n-1) into the full algebra.
    auto ideal = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
        full.tail(k) = v;
        return full;
    };
    const Eigen::VectorXd e0 = Eigen::VectorXd::Unit(n, 0);

    AlmostAbelianCurvature out;
    out.rm.n = n;
    out.rm.entries = Eigen::MatrixXd::Zero(two_form_dim(n), two_form_dim(n));
    for (int i = 0; i < k; ++i) {
        // Rm(e_0 ^ e_i) = -e_0 ^ (D^2 + [D,Q]) e_i
        add_wedge(out.rm.entries, wedge_index(n, 0, i + 1), e0, ideal(m.col(i)), -1.0);
        for (int j = i + 1; j < k; ++j) {
            // Rm(e_i ^ e_j) = D e_j ^ D e_i
            add_wedge(out.rm.entries, wedge_index(n, i + 1, j + 1), ideal(d.col(j)),
                      ideal(d.col(i)), 1.0);
        }
    }

    const double tr_d = d.trace();
    const double tr_d2 = d2.trace();
    out.ricci = Eigen::MatrixXd::Zero(n, n);
    out.ricci(0, 0) = -tr_d2;
    out.ricci.bottomRightCorner(k, k) = (q * d - d * q) - tr_d * d;
    out.scal = -tr_d2 - tr_d * tr_d;
    return out;
}

CurvatureDecomposition decompose(const CurvatureOperatorMatrix& rm, const Eigen::MatrixXd& ric,
                                 double scal) {
    const int n = rm.n;
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "decomposition needs n >= 3");
    const int dim = two_form_dim(n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd ric0 = ric - (scal / n) * id;

    CurvatureDecomposition out;
    out.n = n;
    out.rm_i = {n, (scal / (n * (n - 1.0))) * Eigen::MatrixXd::Identity(dim, dim)};
    out.rm_ric0 = {n, (2.0 / (n - 2.0)) * wedge_product(ric0, id)};
    out.weyl = {n, rm.entries - out.rm_i.entries - out.rm_ric0.entries};
    out.rm_norm = rm.entries.norm();
    out.rm_i_norm = out.rm_i.entries.norm();
    out.rm_ric0_norm = out.rm_ric0.entries.norm();
    out.weyl_norm = out.weyl.entries.norm();
    out.ric_norm = ric.norm();
    if (out.rm_norm > 0) out.weyl_over_rm = std::min(1.0, out.weyl_norm / out.rm_norm);
    if (out.ric_norm > 0) out.rm_over_ric = out.rm_norm / out.ric_norm;
    return out;
}

AlmostAbelianAlgebra gap_family_algebra(int n) {
    if (n < 4) throw Error(ErrorCode::DimensionTooSmall, "gap family needs n >= 4");
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n - 1, -1.0);
    diag(0) = n - 2.0;
    return AlmostAbelianAlgebra(diag.asDiagonal().toDenseMatrix());
}

double gap_family_rm_sq(int n) {
    return 0.5 * (n - 1.0) * (n - 2.0) * (2.0 * n * n - 8.0 * n + 9.0);
}

double gap_family_sum_sq(int n) { return 0.5 * (n - 1.0) * (n - 2.0) * (2.0 * n - 3.0); }

double gap_family_ratio(int n) {
    return std::sqrt(1.0 - (2.0 * n - 3.0) / (2.0 * n * n - 8.0 * n + 9.0));
}

double gap_family_chain_bound(int n) {
    if (n < 4) throw Error(ErrorCode::DimensionTooSmall, "gap family needs n >= 4");
    return std::sqrt(std::max(0.0, 1.0 - 1.0 / (n - 3.0)));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr double kFlatCutoff = 1e-10;

}  // namespace

AlmostAbelianAlgebra sample_algebra(int n, const SamplerSpec& spec, std::uint64_t sample_id) {
    if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "almost-abelian algebra needs n >= 3");
    std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(sample_id)));
    // Manual mapping keeps the stream identical across standard libraries.
    auto uniform = [&] {
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return spec.range * (2.0 * unit - 1.0);
    };
    const int k = n - 1;
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = uniform();
    if (spec.mode == SamplerMode::TracelessSymmetric) {
        Eigen::MatrixXd s = 0.5 * (a + a.transpose());
        s -= (s.trace() / k) * Eigen::MatrixXd::Identity(k, k);
        a = s;
    }
    return AlmostAbelianAlgebra(std::move(a));
}

GapSample evaluate_gap_sample(int n, const SamplerSpec& spec, std::uint64_t sample_id) {
    const auto alg = sample_algebra(n, spec, sample_id);
    const auto curv = almost_abelian_curvature(alg);
    const auto dec = decompose(curv.rm, curv.ricci, curv.scal);
    GapSample s;
    s.n = n;
    s.sample_id = sample_id;
    s.scal = curv.scal;
    s.rm_norm = dec.rm_norm;
    s.flat = dec.rm_norm < kFlatCutoff;
    if (!s.flat) {
        s.weyl_over_rm = dec.weyl_over_rm;
        s.rm_over_ric = dec.rm_over_ric;
    }
    return s;
}

GapScanReport summarize_gap_scan(int n, std::vector<GapSample> samples) {
    GapScanReport rep;
    rep.n = n;
    auto widen = [](std::optional<double>& lo, std::optional<double>& hi, double v) {
        lo = lo ? std::min(*lo, v) : v;
        hi = hi ? std::max(*hi, v) : v;
    };
    for (const auto& s : samples) {
        if (s.weyl_over_rm) widen(rep.min_weyl_over_rm, rep.max_weyl_over_rm, *s.weyl_over_rm);
        if (s.rm_over_ric) widen(rep.min_rm_over_ric, rep.max_rm_over_ric, *s.rm_over_ric);
    }
    rep.samples = std::move(samples);
    rep.family_ratio_closed = gap_family_ratio(n);
    const auto curv = almost_abelian_curvature(gap_family_algebra(n));
    const auto dec = decompose(curv.rm, curv.ricci, curv.scal);
    rep.family_ratio_assembled = dec.weyl_over_rm.value_or(0.0);
    rep.family_reproduced = std::abs(rep.family_ratio_assembled - rep.family_ratio_closed) <= 1e-10;
    return rep;
}

GapScanReport gap_scan(int n, int sample_count, const SamplerSpec& spec) {
    if (n < 4) throw Error(ErrorCode::DimensionTooSmall, "gap scan needs n >= 4");
    if (sample_count < 1) throw Error(ErrorCode::InvalidOptions, "sample_count must be >= 1");
    return summarize_gap_scan(n, kernels::gap_samples_parallel(n, sample_count, spec));
}

}  // namespace hrf
