#pragma once

// Trajectory interchange: one CSV of samples plus a JSON summary per run.
// CSV columns: t, x_1..x_k, scal, ric_norm, rm_norm, volume, alpha, beta.
// Cells that do not apply are left empty.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hrf/flow.hpp"

namespace hrf {

std::string trajectory_csv(const FlowTrajectory& traj);
nlohmann::ordered_json trajectory_summary(const FlowTrajectory& traj);

// Writes <stem>.csv and <stem>.json into dir (created if missing).
void write_trajectory(const std::filesystem::path& dir, const std::string& stem,
                      const FlowTrajectory& traj);

// Rebuilds the logged quantities; the space pointer stays empty.
FlowTrajectory parse_trajectory(const std::string& csv, const nlohmann::json& summary);
FlowTrajectory load_trajectory(const std::filesystem::path& csv_path);

// Every <stem>.csv in dir whose <stem>.json is a trajectory summary, sorted by stem.
std::vector<std::pair<std::string, FlowTrajectory>> load_trajectories(const std::filesystem::path& dir);

std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace hrf
