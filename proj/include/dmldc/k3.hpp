#pragma once

// K = 3, alpha = 2: psi reparameterisation, the five-case auxiliary LP, the
// multiplier catalogue and the region-equality checks.

#include "dmldc/core.hpp"
#include "dmldc/lp.hpp"
#include "dmldc/region.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmldc::k3 {

/// Index of the unordered pair {i,j} in arrays ordered (12, 13, 23).
int pair_index(int i, int j);

struct PsiProfile {
    std::array<double, 3> single{};     // psi_k = max_{nu != k} H(k | nu)
    std::array<std::vector<int>, 3> maximizers;  // all nu attaining psi_k within tol
    std::array<double, 3> pair{};       // psi_{ij}, order (12, 13, 23)
    std::array<double, 3> pair_entropy{};  // H(U_i, U_j), same order

    double psi(int k) const { return single[k - 1]; }
    double psi_pair(int i, int j) const { return pair[pair_index(i, j)]; }
    /// psi_i + psi_ij + psi_j.
    double pair_sum(int i, int j) const { return psi(i) + psi_pair(i, j) + psi(j); }
    /// Smallest maximising index for k.
    int default_nu(int k) const { return maximizers[k - 1].front(); }
};

/// Throws std::domain_error unless K = 3.
PsiProfile compute_psi(const EntropyProfile& profile, int alpha = 2, double tol = kEntropyTol);

/// Builds a psi profile from abstract values (maximizers set to the smallest
/// admissible index); used for synthetic classifier inputs.
PsiProfile make_psi(std::array<double, 3> single, std::array<double, 3> pair_entropy);

struct CaseLabel {
    int w_case = 1;      // 1..5
    char psi_case = 'A';  // 'A'..'D'
    bool is_void = false;
    std::string label() const { return std::to_string(w_case) + psi_case; }
};

/// The 17 feasible labels in table order, and the three void ones.
const std::vector<std::string>& feasible_labels();
const std::vector<std::string>& void_labels();
CaseLabel parse_label(const std::string& label);

class VoidCaseError : public std::domain_error {
public:
    VoidCaseError(CaseLabel label, const std::string& witness);
    CaseLabel label;
};

/// Which pair identity fails: 'A' none, 'B' pair 23, 'C' pair 13, 'D' pair 12.
/// Throws std::domain_error when two or more pairs fail.
char classify_psi_case(const PsiProfile& psi, double tol = kEntropyTol);
/// Five-way case of the auxiliary LP for sorted w.
int classify_w_case(const PsiProfile& psi, const WeightVector& w, double tol = kEntropyTol);
/// Joint label; throws VoidCaseError for 2D, 3C and 4B.
CaseLabel classify_case(const PsiProfile& psi, const WeightVector& w, double tol = kEntropyTol);

/// a1 w1 + a2 w2 + a3 w3.
struct LinearForm {
    Rational a1, a2, a3;
    Rational eval(const WeightVector& w) const { return a1 * w[0] + a2 * w[1] + a3 * w[2]; }
    std::string to_string() const;
};

/// Columns: c_{1|nu1}, c_{2|nu2}, c_{3|nu3}, c_{12|-}, c_{13|-}, c_{23|-}.
using MultiplierRow = std::array<LinearForm, 6>;
using MultiplierTable = std::map<std::string, MultiplierRow>;

/// The multiplier catalogue for the 17 feasible labels. Callers that want to
/// experiment (mutation testing) copy it and pass the copy explicitly.
const MultiplierTable& canonical_table();

/// nu_k pattern required by the psi case: B fixes nu2 = nu3 = 1, C fixes
/// nu1 = nu3 = 2, D fixes nu1 = nu2 = 3. Unconstrained entries are 0.
std::array<int, 3> forced_nu(char psi_case);

/// Multiplier family for sorted w, label and explicit nu (labels 1..3).
MultiplierFamily table_multipliers(const std::string& label, const WeightVector& w, const std::array<int, 3>& nu,
                                   const MultiplierTable& table = canonical_table());

/// Closed-form auxiliary-LP primal for sorted w.
std::array<double, 3> table_primal(int w_case, const PsiProfile& psi);

struct K3Solution {
    LPSolution solution;      // in the caller's labelling
    CaseLabel label;          // computed on the sorted relabelling
    PsiProfile psi;           // of the sorted relabelling
    std::array<int, 3> nu{};  // in the sorted relabelling
    std::vector<int> order;   // order[i] = original label of sorted position i+1
};

/// Closed-form solution of LP^w_{3,2}; unsorted w is relabelled.
K3Solution solve_lp32(const WeightVector& w, const EntropyProfile& profile,
                      const MultiplierTable& table = canonical_table(), double tol = kEntropyTol);

/// The psi-defined region: r_k >= psi_k and r_i + r_j >= psi_i + psi_ij + psi_j.
LayerRegion psi_region(const PsiProfile& psi);

struct RegionEqualityReport {
    bool vertices_equal = true;
    std::vector<RatePoint> vertices;
    std::vector<RatePoint> psi_vertices;
    std::vector<std::string> violations;
    bool pass() const { return vertices_equal && violations.empty(); }
};

/// Vertex-set equality of the layer-2 region and the psi region, plus the
/// three psi dichotomy/implication clauses on every pair.
RegionEqualityReport check_region_equality(const EntropyProfile& profile, double tol = kEntropyTol,
                                           double vertex_tol = 1e-8);

/// Profile with components relabelled: result.H(V) = profile.H(order(V)).
EntropyProfile relabel(const EntropyProfile& profile, const std::vector<int>& order);

}  // namespace dmldc::k3
