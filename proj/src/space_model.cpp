#include "hrf/space_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hrf/error.hpp"
#include "hrf/io.hpp"

namespace hrf {

using nlohmann::json;

Triple StructureConstants::sorted(int i, int j, int k) {
    Triple t{i, j, k};
    std::sort(t.begin(), t.end());
    return t;
}

void StructureConstants::set(int i, int j, int k, double value) {
    if (!(value >= 0.0)) {
        throw Error(ErrorCode::NegativeStructureConstant,
                    "[" + std::to_string(i) + std::to_string(j) + std::to_string(k) +
                        "] = " + std::to_string(value));
    }
    const Triple key = sorted(i, j, k);
    if (value == 0.0) {
        entries_.erase(key);
    } else {
        entries_[key] = value;
    }
}

double StructureConstants::get(int i, int j, int k) const {
    const auto it = entries_.find(sorted(i, j, k));
    return it == entries_.end() ? 0.0 : it->second;
}

HomogeneousSpaceData::HomogeneousSpaceData(std::string name, std::vector<ModuleSummand> summands,
                                           StructureConstants sc)
    : name_(std::move(name)), summands_(std::move(summands)), sc_(std::move(sc)) {
    if (summands_.empty()) {
        throw Error(ErrorCode::InvariantViolation, "space needs at least one module");
    }
    for (std::size_t m = 0; m < summands_.size(); ++m) {
        if (summands_[m].dim < 1) {
            throw Error(ErrorCode::InvariantViolation,
                        "module " + std::to_string(m + 1) + ": dim must be >= 1");
        }
        if (!(summands_[m].killing_b >= 0.0) || !std::isfinite(summands_[m].killing_b)) {
            throw Error(ErrorCode::InvariantViolation,
                        "module " + std::to_string(m + 1) + ": killing_b must be >= 0");
        }
        total_dim_ += summands_[m].dim;
    }
    const int l = static_cast<int>(summands_.size());
    for (const auto& [t, v] : sc_.entries()) {
        if (t[0] < 1 || t[2] > l) {
            throw Error(ErrorCode::InvariantViolation, "structure constant index out of range");
        }
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvariantViolation, "structure constants must be >= 0");
        }
    }
}

BracketTable::BracketTable(int h_dim, int m_dim, std::vector<int> partition)
    : h_dim_(h_dim), m_dim_(m_dim), partition_(std::move(partition)) {
    if (m_dim_ < 1 || h_dim_ < 0) {
        throw Error(ErrorCode::InvariantViolation, "bracket table dimensions");
    }
    if (static_cast<int>(partition_.size()) != m_dim_) {
        throw Error(ErrorCode::InvariantViolation,
                    "partition must assign every m-basis vector to a module");
    }
    const int l = module_count();
    std::vector<bool> used(static_cast<std::size_t>(l), false);
    for (int p : partition_) {
        if (p < 1) throw Error(ErrorCode::InvariantViolation, "module indices are 1-based");
        used[static_cast<std::size_t>(p - 1)] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw Error(ErrorCode::InvariantViolation, "partition leaves a module empty");
    }
    const auto n = static_cast<std::size_t>(full_dim());
    coeff_.assign(n * n * n, 0.0);
}

int BracketTable::module_count() const {
    return partition_.empty() ? 0 : *std::max_element(partition_.begin(), partition_.end());
}

void BracketTable::set_bracket(int a, int b, int c, double v) {
    coeff_[index(a, b, c)] = v;
    coeff_[index(b, a, c)] = -v;
}

double BracketTable::antisymmetry_defect() const {
    double worst = 0;
    const int n = full_dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                worst = std::max(worst, std::abs((*this)(a, b, c) + (*this)(b, a, c)));
    return worst;
}

namespace {

double q_inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    return 0.5 * (x * y.adjoint()).trace().real();
}

}  // namespace

BracketTable bracket_table_from_matrices(const std::vector<Eigen::MatrixXcd>& basis, int h_dim,
                                         std::vector<int> partition) {
    const int n = static_cast<int>(basis.size());
    BracketTable table(h_dim, n - h_dim, std::move(partition));
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const Eigen::MatrixXcd br = basis[a] * basis[b] - basis[b] * basis[a];
            for (int c = 0; c < n; ++c) {
                table.set_bracket(a, b, c, q_inner(br, basis[c]));
            }
        }
    }
    return table;
}

Eigen::MatrixXd killing_form(const BracketTable& table) {
    const int n = table.full_dim();
    // (ad e_a)_{dc} = <[e_a, e_c], e_d>
    std::vector<Eigen::MatrixXd> ad(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) ad[a](d, c) = table(a, c, d);
    Eigen::MatrixXd b(n, n);
    for (int a = 0; a < n; ++a)
        for (int c = a; c < n; ++c) b(a, c) = b(c, a) = (ad[a] * ad[c]).trace();
    return b;
}

HomogeneousSpaceData build_space_from_brackets(const BracketTable& table, const std::string& name,
                                               double killing_tol) {
    if (table.antisymmetry_defect() > 1e-12) {
        throw Error(ErrorCode::InvariantViolation, "brackets are not antisymmetric");
    }
    const int l = table.module_count();
    const int h = table.h_dim();
    const Eigen::MatrixXd minus_b = -killing_form(table);

    std::vector<std::vector<int>> members(static_cast<std::size_t>(l));
    for (int k = 0; k < table.m_dim(); ++k) {
        members[static_cast<std::size_t>(table.partition()[k] - 1)].push_back(h + k);
    }

    std::vector<ModuleSummand> summands;
    for (int m = 0; m < l; ++m) {
        const auto& idx = members[static_cast<std::size_t>(m)];
        double mean = 0;
        for (int a : idx) mean += minus_b(a, a);
        mean /= static_cast<double>(idx.size());
        const double tol = killing_tol * std::max(1.0, std::abs(mean));
        for (int a : idx) {
            for (int c : idx) {
                const double expected = (a == c) ? mean : 0.0;
                if (std::abs(minus_b(a, c) - expected) > tol) {
                    throw Error(ErrorCode::NonScalarKilling,
                                "-B restricted to module " + std::to_string(m + 1) +
                                    " is not a multiple of the identity");
                }
            }
        }
        // -B is positive semidefinite on compact algebras; clamp roundoff.
        summands.push_back({static_cast<int>(idx.size()), std::max(0.0, mean)});
    }

    StructureConstants sc;
    for (int i = 1; i <= l; ++i) {
        for (int j = i; j <= l; ++j) {
            for (int k = j; k <= l; ++k) {
                double sum = 0;
                for (int a : members[i - 1])
                    for (int b : members[j - 1])
                        for (int c : members[k - 1]) {
                            const double v = table(a, b, c);
                            sum += v * v;
                        }
                sc.set(i, j, k, sum);
            }
        }
    }
    return HomogeneousSpaceData(name, std::move(summands), std::move(sc));
}

HomogeneousSpaceData preset_su2() {
    StructureConstants sc;
    sc.set(1, 2, 3, 4.0);
    return HomogeneousSpaceData("su2", {{1, 8.0}, {1, 8.0}, {1, 8.0}}, std::move(sc));
}

HomogeneousSpaceData preset_suN_example(int n) {
    if (n < 3) {
        throw Error(ErrorCode::DimensionTooSmall, "SU(n) example needs n >= 3, got " +
                                                      std::to_string(n));
    }
    const double b = 4.0 * n;
    StructureConstants sc;
    sc.set(1, 1, 2, 4.0 * n * (n - 2));
    sc.set(1, 1, 3, 4.0 * n);
    return HomogeneousSpaceData("suN_example_n" + std::to_string(n),
                                {{4 * (n - 1), b}, {n * (n - 2), b}, {1, b}}, std::move(sc));
}

std::vector<double> weyl_ziller_residuals(const HomogeneousSpaceData& space) {
    const int l = static_cast<int>(space.module_count());
    std::vector<double> res;
    for (int m = 1; m <= l; ++m) {
        double sum = 0;
        for (int i = 1; i <= l; ++i)
            for (int j = 1; j <= l; ++j) sum += space.sc(m, i, j);
        res.push_back(space.dim(m) * space.killing_b(m) - sum);
    }
    return res;
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
    throw Error(ErrorCode::ParseError, where + ": " + msg);
}

template <class T>
T field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) parse_fail(where, std::string("missing field '") + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        parse_fail(where + "." + key, e.what());
    }
}

}  // namespace

HomogeneousSpaceData parse_space(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line number for the message.
        const auto upto = json_text.substr(0, std::min<std::size_t>(e.byte, json_text.size()));
        const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
        parse_fail("line " + std::to_string(line), e.what());
    }

    const auto name = field<std::string>(doc, "name", "space");
    const json modules = field<json>(doc, "modules", "space");
    if (!modules.is_array() || modules.empty()) parse_fail("modules", "expected a non-empty array");

    std::vector<ModuleSummand> summands;
    for (std::size_t m = 0; m < modules.size(); ++m) {
        const std::string where = "modules[" + std::to_string(m) + "]";
        const json& entry = modules[m];
        if (!entry.contains("dim") || !entry["dim"].is_number_integer())
            parse_fail(where + ".dim", "expected an integer");
        summands.push_back({entry["dim"].get<int>(), field<double>(entry, "killing_b", where)});
    }
    const int l = static_cast<int>(summands.size());

    StructureConstants sc;
    std::set<Triple> seen;
    std::vector<std::pair<Triple, double>> raw;
    if (doc.contains("structure_constants")) {
        const json& list = doc["structure_constants"];
        if (!list.is_array()) parse_fail("structure_constants", "expected an array");
        for (std::size_t s = 0; s < list.size(); ++s) {
            const std::string where = "structure_constants[" + std::to_string(s) + "]";
            const auto triple = field<std::vector<int>>(list[s], "triple", where);
            const auto value = field<double>(list[s], "value", where);
            if (triple.size() != 3) parse_fail(where + ".triple", "expected three indices");
            const Triple t{triple[0], triple[1], triple[2]};
            if (!(t[0] <= t[1] && t[1] <= t[2]))
                parse_fail(where + ".triple", "indices must be sorted ascending");
            if (t[0] < 1 || t[2] > l)
                parse_fail(where + ".triple", "index outside 1.." + std::to_string(l));
            if (!seen.insert(t).second) parse_fail(where + ".triple", "duplicate triple");
            raw.emplace_back(t, value);
        }
    }
    for (const auto& [t, v] : raw) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvariantViolation,
                        "structure constant [" + std::to_string(t[0]) + std::to_string(t[1]) +
                            std::to_string(t[2]) + "] must be >= 0");
        }
        sc.set(t[0], t[1], t[2], v);
    }
    return HomogeneousSpaceData(name, std::move(summands), std::move(sc));
}

HomogeneousSpaceData load_space(const std::filesystem::path& path) {
    return parse_space(read_file(path));
}

std::string serialize_space(const HomogeneousSpaceData& space) {
    json doc;
    doc["name"] = space.name();
    doc["modules"] = json::array();
    for (const auto& s : space.summands()) {
        doc["modules"].push_back({{"dim", s.dim}, {"killing_b", s.killing_b}});
    }
    doc["structure_constants"] = json::array();
    for (const auto& [t, v] : space.structure_constants().entries()) {
        doc["structure_constants"].push_back({{"triple", {t[0], t[1], t[2]}}, {"value", v}});
    }
    return doc.dump(2) + "\n";
}

void save_space(const HomogeneousSpaceData& space, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_space(space));
}

}  // namespace hrf
