#include "hrf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hrf/error.hpp"

namespace hrf {

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_sig(double v, int digits) {
    if (std::isnan(v)) return "-";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::Io, "rename " + tmp.string() + ": " + ec.message());
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::NonScalarKilling: return "NonScalarKilling";
        case ErrorCode::NegativeStructureConstant: return "NegativeStructureConstant";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::NonPositiveMetric: return "NonPositiveMetric";
        case ErrorCode::WrongDimension: return "WrongDimension";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::RmNormUnavailable: return "RmNormUnavailable";
        case ErrorCode::WindowOutsideTrajectory: return "WindowOutsideTrajectory";
        case ErrorCode::SignChangeInWindow: return "SignChangeInWindow";
        case ErrorCode::FlatSolution: return "FlatSolution";
        case ErrorCode::EmptySampleSet: return "EmptySampleSet";
        case ErrorCode::ParameterTooSmall: return "ParameterTooSmall";
        case ErrorCode::InvalidOptions: return "InvalidOptions";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace hrf
