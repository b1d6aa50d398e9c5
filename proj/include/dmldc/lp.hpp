#pragma once

#include "dmldc/core.hpp"
#include "dmldc/rational.hpp"
#include "dmldc/region.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace dmldc {

/// Nonnegative weights w_1..w_K; w_{K+1} = 0 implicitly.
using WeightVector = std::vector<Rational>;

/// Throws std::invalid_argument on a negative entry or empty vector.
void validate_weights(const WeightVector& w);
bool is_sorted_desc(const WeightVector& w);
/// order[i] = 1-based label of the (i+1)-th largest weight; ties keep label order.
std::vector<int> descending_order(const WeightVector& w);
/// Image of V under label map: element i (1-based rank) -> order[i-1].
SubsetId map_subset(SubsetId V, const std::vector<int>& order);

struct MultiplierKey {
    SubsetId V;
    SubsetId Vp;
    auto operator<=>(const MultiplierKey&) const = default;
};

/// c_{V|V',alpha}; absent keys are zero. `exact` is false when the values were
/// converted from a floating-point solve.
struct MultiplierFamily {
    int alpha = 0;
    std::map<MultiplierKey, Rational> entries;
    bool exact = true;

    Rational get(SubsetId V, SubsetId Vp) const;
    void add(SubsetId V, SubsetId Vp, const Rational& c);
    /// Drops zero entries.
    void prune();
};

struct LPInstance {
    WeightVector w;
    LayerRegion region;
};

LPInstance make_instance(const EntropyProfile& profile, int alpha, WeightVector w);

enum class LPStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LPStatus s);

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    RatePoint primal;
    double value = 0.0;
    MultiplierFamily dual;
};

struct SolveMode {
    bool exact = false;
    double feas_tol = 1e-9;
    double cs_tol = 1e-7;
};

/// Generic simplex on LP^w_{K,alpha}. The returned dual satisfies the weight
/// identity exactly in exact mode. Throws std::runtime_error on numerical
/// failure or when primal feasibility / complementary slackness fail.
LPSolution solve_simplex(const LPInstance& instance, SolveMode mode = {});

struct MultiplierReport {
    bool keys_ok = true;
    bool value_ok = true;
    bool weights_ok = true;
    bool nonneg_ok = true;
    double lhs_value = 0.0;
    std::vector<std::string> problems;
    bool pass() const { return keys_ok && value_ok && weights_ok && nonneg_ok; }
};

/// Checks the three optimal-multiplier conditions against a claimed value.
MultiplierReport verify_multiplier(const MultiplierFamily& c, const WeightVector& w, const EntropyProfile& profile,
                                   int alpha, double claimed_value, double tol = 1e-8);

/// Exact weight identity only: sum over keys containing k equals w_k.
bool weight_identity_holds(const MultiplierFamily& c, const WeightVector& w);

LPSolution closed_form_alpha1(const WeightVector& w, const EntropyProfile& profile);
/// Chain-rule solution at alpha = K; unsorted w is relabelled internally.
LPSolution closed_form_alphaK(const WeightVector& w, const EntropyProfile& profile);

struct WeightClass {
    int l = 0;
    Rational lambda;
};

/// Index l of the weight cone containing sorted w at level alpha, and the
/// averaged tail weight. Throws std::domain_error on unsorted w or bad alpha.
WeightClass weight_class(const WeightVector& w, int alpha);

}  // namespace dmldc
