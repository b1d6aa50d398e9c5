#pragma once

#include "dmldc/core.hpp"
#include "dmldc/rational.hpp"

#include <string>
#include <vector>

namespace dmldc {

/// sum_k coeffs[k] r_k >= rhs. For layer regions coeffs is the indicator of V
/// and rhs = H(U_V | U_Vp).
struct Halfspace {
    SubsetId V;
    SubsetId Vp;
    std::vector<int> coeffs;
    double rhs = 0.0;
};

struct LayerRegion {
    int K = 0;
    int alpha = 0;
    std::vector<Halfspace> halfspaces;
};

struct RatePoint {
    std::vector<double> rates;
};

/// Number of (V, V') pairs with 1 <= |V| <= alpha, V' disjoint from V and
/// |V| + |V'| = alpha.
long long layer_constraint_count(int K, int alpha);

/// All admissible (V, V') pairs in a fixed order: by |V|, then V mask, then V' mask.
std::vector<std::pair<SubsetId, SubsetId>> layer_constraint_pairs(int K, int alpha);

LayerRegion build_layer_region(const EntropyProfile& profile, int alpha);

/// A region given directly by halfspaces (used for the psi-defined K=3 region).
LayerRegion make_region(int K, int alpha, std::vector<Halfspace> halfspaces);

bool contains(const LayerRegion& region, const RatePoint& point, double tol);

struct MembershipResult {
    bool member = false;
    /// split[alpha-1][k-1] = r_{k,alpha}; filled when member.
    std::vector<std::vector<double>> split;
    /// Smallest uniform slack t with R_k + t admitting a split (<= tol iff member).
    double deficit = 0.0;
};

/// Decides whether (R_k) lies in the superposition region by one LP over the
/// K*K per-layer rates. Throws std::runtime_error on LP numerical failure.
MembershipResult region_membership(const EntropyProfile& profile, const RatePoint& point, double tol = 1e-9);

/// Basic feasible points of a layer region (K <= 4), deduplicated at `tol`
/// in the infinity norm and sorted lexicographically.
std::vector<RatePoint> enumerate_vertices(const LayerRegion& region, double tol = 1e-8);

/// True iff both lists have the same points up to `tol` (infinity norm).
bool same_vertex_sets(const std::vector<RatePoint>& a, const std::vector<RatePoint>& b, double tol = 1e-8);

/// Sum over layers of the optimal LP value for weight w.
double support_value(const EntropyProfile& profile, const std::vector<Rational>& w);

}  // namespace dmldc
