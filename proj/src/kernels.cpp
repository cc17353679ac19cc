#include "hrf/kernels.hpp"

#include <omp.h>

#include "hrf/curvature.hpp"
#include "hrf/error.hpp"
#include "hrf/planar.hpp"

namespace hrf::kernels {

namespace {
int g_workers = 0;
}

void set_workers(int workers) {
    if (workers < 0) throw Error(ErrorCode::InvalidOptions, "workers must be >= 0");
    g_workers = workers;
}

int max_workers() { return g_workers > 0 ? g_workers : omp_get_max_threads(); }

std::vector<GapSample> gap_samples_serial(int n, int count, const SamplerSpec& spec) {
    std::vector<GapSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(evaluate_gap_sample(n, spec, static_cast<std::uint64_t>(i)));
    return out;
}

std::vector<GapSample> gap_samples_parallel(int n, int count, const SamplerSpec& spec) {
    return parallel_map<GapSample>(static_cast<std::size_t>(count), [&](std::size_t i) {
        return evaluate_gap_sample(n, spec, static_cast<std::uint64_t>(i));
    });
}

std::vector<std::vector<double>> ricci_batch_serial(const HomogeneousSpaceData& space,
                                                    const std::vector<std::vector<double>>& metrics) {
    std::vector<std::vector<double>> out;
    out.reserve(metrics.size());
    for (const auto& x : metrics) out.push_back(ricci_diagonal(space, std::span<const double>(x)));
    return out;
}

std::vector<std::vector<double>> ricci_batch_parallel(const HomogeneousSpaceData& space,
                                                      const std::vector<std::vector<double>>& metrics) {
    return parallel_map<std::vector<double>>(metrics.size(), [&](std::size_t i) {
        return ricci_diagonal(space, std::span<const double>(metrics[i]));
    });
}

double GridSpec::alpha_at(int i) const {
    if (alpha_nodes < 2) return alpha_min;
    return alpha_min + (alpha_max - alpha_min) * i / (alpha_nodes - 1);
}

double GridSpec::beta_at(int j) const {
    if (beta_nodes < 2) return beta_min;
    return beta_min + (beta_max - beta_min) * j / (beta_nodes - 1);
}

namespace {

void check_grid(const GridSpec& g) {
    if (g.alpha_nodes < 1 || g.beta_nodes < 1 || !(g.alpha_min > 0) || g.alpha_max < g.alpha_min ||
        g.beta_min < 0 || g.beta_max < g.beta_min)
        throw Error(ErrorCode::InvalidOptions, "grid needs alpha > 0, beta >= 0 and at least one node");
}

GridNode grid_node(int n, const GridSpec& g, std::size_t k) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(g.alpha_nodes));
    const int j = static_cast<int>(k / static_cast<std::size_t>(g.alpha_nodes));
    GridNode node;
    node.alpha = g.alpha_at(i);
    node.beta = g.beta_at(j);
    const auto v = suN_planar_field(n, {node.alpha, node.beta});
    node.d_alpha = v.alpha;
    node.d_beta = v.beta;
    return node;
}

}  // namespace

std::vector<GridNode> suN_grid_serial(int n, const GridSpec& grid) {
    check_grid(grid);
    const std::size_t total = static_cast<std::size_t>(grid.alpha_nodes) * grid.beta_nodes;
    std::vector<GridNode> out(total);
    for (std::size_t k = 0; k < total; ++k) out[k] = grid_node(n, grid, k);
    return out;
}

std::vector<GridNode> suN_grid_parallel(int n, const GridSpec& grid) {
    check_grid(grid);
    const std::size_t total = static_cast<std::size_t>(grid.alpha_nodes) * grid.beta_nodes;
    return parallel_map<GridNode>(total, [&](std::size_t k) { return grid_node(n, grid, k); });
}

}  // namespace hrf::kernels
