#include "hrf/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hrf/error.hpp"
#include "hrf/io.hpp"

namespace hrf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json optional_number(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
}

std::size_t x_columns(const FlowTrajectory& traj) {
    if (traj.kind == TrajectoryKind::Planar || traj.states.empty()) return 0;
    return traj.states.front().size();
}

double parse_cell(const std::string& cell, std::size_t line) {
    if (cell.empty()) return kNaN;
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad number '" + cell + "'");
    }
}

TerminationKind termination_from(const std::string& s) {
    for (auto k : {TerminationKind::ReachedEnd, TerminationKind::Extinction, TerminationKind::CurvatureBlowUp,
                   TerminationKind::EventHit, TerminationKind::StepUnderflow})
        if (to_string(k) == s) return k;
    throw Error(ErrorCode::ParseError, "unknown termination '" + s + "'");
}

TrajectoryKind kind_from(const std::string& s) {
    for (auto k : {TrajectoryKind::Metric, TrajectoryKind::AlmostAbelian, TrajectoryKind::Planar})
        if (to_string(k) == s) return k;
    throw Error(ErrorCode::ParseError, "unknown trajectory kind '" + s + "'");
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string trajectory_csv(const FlowTrajectory& traj) {
    const std::size_t k = x_columns(traj);
    std::string out = "t";
    for (std::size_t m = 1; m <= k; ++m) out += ",x_" + std::to_string(m);
    out += ",scal,ric_norm,rm_norm,volume,alpha,beta\n";
    const bool has_reports = traj.reports.size() == traj.size();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& y = traj.states[i];
        out += format_number(traj.times[i]);
        for (std::size_t m = 0; m < k; ++m) out += "," + format_number(y[m]);
        double scal = kNaN, ric = kNaN, rm = kNaN, vol = kNaN, alpha = kNaN, beta = kNaN;
        if (has_reports) {
            const auto& r = traj.reports[i];
            scal = r.scal;
            ric = r.ric_norm;
            rm = r.rm_norm.value_or(kNaN);
            vol = std::sqrt(r.volume_power);
        }
        if (traj.kind == TrajectoryKind::Planar) {
            alpha = y[0];
            beta = y[1];
        } else if (traj.kind == TrajectoryKind::Metric && y.size() == 3) {
            alpha = y[1] / y[0];
            beta = y[2] / y[0];
        }
        for (double v : {scal, ric, rm, vol, alpha, beta}) out += "," + format_number(v);
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json trajectory_summary(const FlowTrajectory& traj) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(traj.kind);
    j["field"] = to_string(traj.field);
    j["dimension"] = traj.dimension;
    if (traj.space) j["space"] = traj.space->name();
    j["samples"] = traj.size();
    j["termination"] = to_string(traj.termination);
    j["t_final"] = traj.t_final();
    j["extinction_estimate"] = optional_number(traj.extinction_estimate);
    j["terminal_event"] = traj.terminal_event ? nlohmann::ordered_json(*traj.terminal_event) : nullptr;
    auto events = nlohmann::ordered_json::array();
    for (const auto& ev : traj.events) events.push_back({{"name", ev.name}, {"time", ev.time}});
    j["events"] = events;
    j["note"] = traj.note;
    return j;
}

void write_trajectory(const std::filesystem::path& dir, const std::string& stem, const FlowTrajectory& traj) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / (stem + ".csv"), trajectory_csv(traj));
    write_file_atomic(dir / (stem + ".json"), dump_json(trajectory_summary(traj)));
}

FlowTrajectory parse_trajectory(const std::string& csv, const nlohmann::json& summary) {
    FlowTrajectory traj;
    try {
        traj.kind = kind_from(summary.at("kind").get<std::string>());
        traj.field = summary.at("field").get<std::string>() == "normalized" ? FieldKind::Normalized
                                                                            : FieldKind::Unnormalized;
        traj.dimension = summary.at("dimension").get<int>();
        traj.termination = termination_from(summary.at("termination").get<std::string>());
        if (summary.contains("extinction_estimate") && summary["extinction_estimate"].is_number())
            traj.extinction_estimate = summary["extinction_estimate"].get<double>();
        if (summary.contains("terminal_event") && summary["terminal_event"].is_string())
            traj.terminal_event = summary["terminal_event"].get<std::string>();
        if (summary.contains("events"))
            for (const auto& ev : summary["events"])
                traj.events.push_back({ev.at("name").get<std::string>(), ev.at("time").get<double>(), {}});
        if (summary.contains("note")) traj.note = summary["note"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("summary: ") + e.what());
    }

    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty trajectory CSV");
    const auto header = split(line, ',');
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error(ErrorCode::ParseError, "CSV lacks column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_scal = column("scal"), c_ric = column("ric_norm"), c_rm = column("rm_norm"),
                      c_vol = column("volume"), c_alpha = column("alpha"), c_beta = column("beta");
    if (header.front() != "t") throw Error(ErrorCode::ParseError, "first CSV column must be t");
    const std::size_t k = c_scal - 1;

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                                   std::to_string(header.size()) + " cells");
        traj.times.push_back(parse_cell(cells[0], lineno));
        std::vector<double> y;
        if (traj.kind == TrajectoryKind::Planar) {
            y = {parse_cell(cells[c_alpha], lineno), parse_cell(cells[c_beta], lineno)};
        } else {
            for (std::size_t m = 0; m < k; ++m) y.push_back(parse_cell(cells[1 + m], lineno));
        }
        traj.states.push_back(std::move(y));
        const double scal = parse_cell(cells[c_scal], lineno);
        if (!std::isnan(scal)) {
            CurvatureReport rep;
            rep.scal = scal;
            rep.ric_norm = parse_cell(cells[c_ric], lineno);
            const double rm = parse_cell(cells[c_rm], lineno);
            if (!std::isnan(rm)) rep.rm_norm = rm;
            const double vol = parse_cell(cells[c_vol], lineno);
            rep.volume_power = vol * vol;
            rep.total_dim = traj.dimension;
            traj.reports.push_back(rep);
        }
    }
    if (!traj.reports.empty() && traj.reports.size() != traj.size())
        throw Error(ErrorCode::ParseError, "curvature columns are only partly filled");
    return traj;
}

FlowTrajectory load_trajectory(const std::filesystem::path& csv_path) {
    auto json_path = csv_path;
    json_path.replace_extension(".json");
    nlohmann::json summary;
    try {
        summary = nlohmann::json::parse(read_file(json_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, json_path.string() + ": " + e.what());
    }
    return parse_trajectory(read_file(csv_path), summary);
}

std::vector<std::pair<std::string, FlowTrajectory>> load_trajectories(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
    std::vector<std::filesystem::path> csvs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".csv") continue;
        auto js = entry.path();
        js.replace_extension(".json");
        if (!std::filesystem::exists(js)) continue;
        try {
            if (!nlohmann::json::parse(read_file(js)).contains("kind")) continue;
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        csvs.push_back(entry.path());
    }
    std::sort(csvs.begin(), csvs.end());
    std::vector<std::pair<std::string, FlowTrajectory>> out;
    for (const auto& p : csvs) out.emplace_back(p.stem().string(), load_trajectory(p));
    return out;
}

}  // namespace hrf
