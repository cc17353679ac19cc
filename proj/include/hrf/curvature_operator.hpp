#pragma once

// Curvature operator of left-invariant metrics on almost-abelian Lie groups.
//
// The Lie algebra has an orthonormal basis e_0, ..., e_{n-1} with
// [e_0, e_i] = A e_i for i >= 1 and all other brackets zero. D and Q are the
// symmetric and skew parts of A. Two-forms use the orthonormal basis
// e_i ^ e_j (i < j) in lexicographic order.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace hrf {

class AlmostAbelianAlgebra {
public:
    explicit AlmostAbelianAlgebra(Eigen::MatrixXd a);

    int n() const { return static_cast<int>(a_.rows()) + 1; }
    const Eigen::MatrixXd& a() const { return a_; }
    const Eigen::MatrixXd& d() const { return d_; }
    const Eigen::MatrixXd& q() const { return q_; }

private:
    Eigen::MatrixXd a_, d_, q_;
};

struct CurvatureOperatorMatrix {
    int n = 0;
    Eigen::MatrixXd entries;  // n(n-1)/2 square, symmetric
};

constexpr int two_form_dim(int n) { return n * (n - 1) / 2; }
// Position of e_i ^ e_j, 0 <= i < j < n, in the lexicographic basis.
int wedge_index(int n, int i, int j);

// Matrix of S ^ T acting by (S^T)(x^y) = 1/2 (Sx ^ Ty + Tx ^ Sy).
Eigen::MatrixXd wedge_product(const Eigen::MatrixXd& s, const Eigen::MatrixXd& t);

struct AlmostAbelianCurvature {
    CurvatureOperatorMatrix rm;
    Eigen::MatrixXd ricci;  // n x n endomorphism in the basis e_0..e_{n-1}
    double scal = 0;
};

AlmostAbelianCurvature almost_abelian_curvature(const AlmostAbelianAlgebra& alg);

inline double frobenius_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a.array() * b.array()).sum();
}

struct CurvatureDecomposition {
    int n = 0;
    CurvatureOperatorMatrix rm_i, rm_ric0, weyl;
    double rm_norm = 0, rm_i_norm = 0, rm_ric0_norm = 0, weyl_norm = 0;
    double ric_norm = 0;
    std::optional<double> weyl_over_rm;
    std::optional<double> rm_over_ric;
};

// Rm = scal/(n(n-1)) id^id + 2/(n-2) Ric_0^id + W, with W obtained by subtraction.
CurvatureDecomposition decompose(const CurvatureOperatorMatrix& rm, const Eigen::MatrixXd& ric,
                                 double scal);

// D = diag(n-2, -1, ..., -1), Q = 0.
AlmostAbelianAlgebra gap_family_algebra(int n);
double gap_family_rm_sq(int n);       // 1/2 (n-1)(n-2)(2n^2-8n+9)
double gap_family_sum_sq(int n);      // 1/2 (n-1)(n-2)(2n-3)
double gap_family_ratio(int n);       // sqrt(1 - (2n-3)/(2n^2-8n+9))
double gap_family_chain_bound(int n); // sqrt(1 - 1/(n-3)), lower bound implied by the norm chain

enum class SamplerMode { Uniform, TracelessSymmetric };

struct SamplerSpec {
    SamplerMode mode = SamplerMode::Uniform;
    double range = 2.0;  // entries uniform in [-range, range]
    std::uint64_t seed = 1;
};

// Deterministic in (seed, sample_id), independent of evaluation order.
AlmostAbelianAlgebra sample_algebra(int n, const SamplerSpec& spec, std::uint64_t sample_id);

struct GapSample {
    int n = 0;
    std::uint64_t sample_id = 0;
    std::optional<double> weyl_over_rm;
    std::optional<double> rm_over_ric;
    double scal = 0;
    double rm_norm = 0;
    bool flat = false;
};

GapSample evaluate_gap_sample(int n, const SamplerSpec& spec, std::uint64_t sample_id);

struct GapScanReport {
    int n = 0;
    std::vector<GapSample> samples;
    std::optional<double> max_weyl_over_rm, min_weyl_over_rm;
    std::optional<double> max_rm_over_ric, min_rm_over_ric;
    double family_ratio_closed = 0;
    double family_ratio_assembled = 0;
    bool family_reproduced = false;  // |assembled - closed| <= 1e-10
};

GapScanReport gap_scan(int n, int sample_count, const SamplerSpec& spec);
// Builds the summary (extrema, family check) from already evaluated samples.
GapScanReport summarize_gap_scan(int n, std::vector<GapSample> samples);

}  // namespace hrf
