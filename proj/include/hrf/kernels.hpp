#pragma once

// OpenMP batch kernels. Each parallel kernel has a serial twin computing the same
// values in the same slots; tests and the benchmark compare the two.

#include <cstddef>
#include <exception>
#include <vector>

#include "hrf/curvature_operator.hpp"
#include "hrf/space_model.hpp"

namespace hrf::kernels {

// 0 restores the OpenMP default.
void set_workers(int workers);
int max_workers();

// out[i] = fn(i). Exceptions are captured per index and the lowest index is
// rethrown after the loop, so failures do not depend on scheduling either.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_workers())
    for (long long i = 0; i < total; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<GapSample> gap_samples_serial(int n, int count, const SamplerSpec& spec);
std::vector<GapSample> gap_samples_parallel(int n, int count, const SamplerSpec& spec);

std::vector<std::vector<double>> ricci_batch_serial(const HomogeneousSpaceData& space,
                                                    const std::vector<std::vector<double>>& metrics);
std::vector<std::vector<double>> ricci_batch_parallel(const HomogeneousSpaceData& space,
                                                      const std::vector<std::vector<double>>& metrics);

struct GridSpec {
    double alpha_min = 0, alpha_max = 1;
    double beta_min = 0, beta_max = 1;
    int alpha_nodes = 2, beta_nodes = 2;
    double alpha_at(int i) const;
    double beta_at(int j) const;
};

struct GridNode {
    double alpha = 0, beta = 0;
    double d_alpha = 0, d_beta = 0;
};

// Row-major in beta: node (i, j) sits at j * alpha_nodes + i. Reparametrized SU(n) field.
std::vector<GridNode> suN_grid_serial(int n, const GridSpec& grid);
std::vector<GridNode> suN_grid_parallel(int n, const GridSpec& grid);

}  // namespace hrf::kernels
