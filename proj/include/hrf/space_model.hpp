#pragma once

// Algebraic data of a compact homogeneous space G/H with a fixed
// Q-orthogonal decomposition m = m_1 + ... + m_l into irreducible modules.
// All module indices exposed here are 1-based.

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hrf {

struct ModuleSummand {
    int dim = 1;            // d_m
    double killing_b = 0;   // -B|m_m = b_m Q|m_m
    bool operator==(const ModuleSummand&) const = default;
};

using Triple = std::array<int, 3>;

// Sparse [ijk] storage keyed by sorted triples, so permutation symmetry is structural.
class StructureConstants {
public:
    void set(int i, int j, int k, double value);
    double get(int i, int j, int k) const;
    const std::map<Triple, double>& entries() const { return entries_; }
    bool operator==(const StructureConstants&) const = default;

    static Triple sorted(int i, int j, int k);

private:
    std::map<Triple, double> entries_;
};

class HomogeneousSpaceData {
public:
    HomogeneousSpaceData(std::string name, std::vector<ModuleSummand> summands,
                         StructureConstants sc);

    const std::string& name() const { return name_; }
    const std::vector<ModuleSummand>& summands() const { return summands_; }
    const StructureConstants& structure_constants() const { return sc_; }
    std::size_t module_count() const { return summands_.size(); }
    int total_dim() const { return total_dim_; }
    int dim(int m) const { return summands_.at(static_cast<std::size_t>(m - 1)).dim; }
    double killing_b(int m) const { return summands_.at(static_cast<std::size_t>(m - 1)).killing_b; }
    double sc(int i, int j, int k) const { return sc_.get(i, j, k); }

    bool operator==(const HomogeneousSpaceData&) const = default;

private:
    std::string name_;
    std::vector<ModuleSummand> summands_;
    StructureConstants sc_;
    int total_dim_ = 0;
};

// Bracket coefficients <[e_a, e_b], e_c> over a Q-orthonormal basis of h + m.
// Basis ordering: indices [0, h_dim) span h, [h_dim, h_dim + m_dim) span m.
class BracketTable {
public:
    BracketTable(int h_dim, int m_dim, std::vector<int> partition);

    int h_dim() const { return h_dim_; }
    int m_dim() const { return m_dim_; }
    int full_dim() const { return h_dim_ + m_dim_; }
    // partition[k] is the 1-based module of m-basis vector k.
    const std::vector<int>& partition() const { return partition_; }
    int module_count() const;

    double operator()(int a, int b, int c) const { return coeff_[index(a, b, c)]; }
    // Sets <[e_a,e_b],e_c> = v and <[e_b,e_a],e_c> = -v.
    void set_bracket(int a, int b, int c, double v);

    double antisymmetry_defect() const;

private:
    std::size_t index(int a, int b, int c) const {
        const auto n = static_cast<std::size_t>(full_dim());
        return (static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n +
               static_cast<std::size_t>(c);
    }

    int h_dim_;
    int m_dim_;
    std::vector<int> partition_;
    std::vector<double> coeff_;
};

// Expands a matrix Lie algebra basis (assumed orthonormal for Q(X,Y) = 1/2 Re tr(X Y*))
// into a bracket table. The first h_dim matrices span h.
BracketTable bracket_table_from_matrices(const std::vector<Eigen::MatrixXcd>& basis, int h_dim,
                                         std::vector<int> partition);

// Killing form B(e_a, e_b) = tr(ad e_a ad e_b) over the full basis.
Eigen::MatrixXd killing_form(const BracketTable& table);

HomogeneousSpaceData build_space_from_brackets(const BracketTable& table, const std::string& name,
                                               double killing_tol = 1e-9);

HomogeneousSpaceData preset_su2();
HomogeneousSpaceData preset_suN_example(int n);

// Residuals d_m b_m - sum_{i,j} [mij] per module. Diagnostic only: the identity
// carries isotropy corrections in general.
std::vector<double> weyl_ziller_residuals(const HomogeneousSpaceData& space);

HomogeneousSpaceData load_space(const std::filesystem::path& path);
HomogeneousSpaceData parse_space(const std::string& json_text);
void save_space(const HomogeneousSpaceData& space, const std::filesystem::path& path);
std::string serialize_space(const HomogeneousSpaceData& space);

}  // namespace hrf
