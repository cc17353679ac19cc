#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Log-uniform positive metric entries in [lo, hi].
inline std::vector<double> random_metric(std::mt19937_64& rng, std::size_t k, double lo = 0.1, double hi = 10.0) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> x(k);
    for (auto& v : x) v = std::exp(u(rng));
    return x;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("hrf_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testsupport
