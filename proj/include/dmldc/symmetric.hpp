#pragma once

// Symmetric-source engine: closed-form layer LPs, the multiplier family
// C^w_{K,alpha}, its level-to-level recursion and the full chain for any K.
//
// Families are stored in the sorted labelling (w nonincreasing). SymChain
// keeps the permutation so results can be mapped back to caller labels.

#include "dmldc/core.hpp"
#include "dmldc/lp.hpp"
#include "dmldc/prover.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmldc::sym {

struct SymMultiplierFamily {
    int K = 0;
    int alpha = 0;
    int l = 0;
    Rational lambda;
    /// prefix[k-1] = c_{[1:k],alpha}, k in [1:l].
    std::vector<Rational> prefix;
    /// Entries on Omega^(l) = { |V| = alpha, [1:l] subset of V }; anything
    /// else stored here is a membership violation.
    std::map<SubsetId, Rational> top;

    /// All nonzero c_V, prefix and top merged.
    std::map<SubsetId, Rational> entries() const;
    Rational total() const;
};

struct ThetaRecord {
    int alpha = 0;
    int l = 0;
    Rational lambda;
    /// Defined for alpha >= 2.
    std::optional<Rational> theta;
};

/// theta^w_alpha from level alpha's prefix and the weight classes of alpha and
/// alpha-1 (w sorted, alpha >= 2).
Rational compute_theta(const SymMultiplierFamily& c, const WeightVector& w);

/// The r^(l) point for the given l.
std::vector<double> r_of_l(const SymmetricProfile& H, int alpha, int l);

/// Closed-form LP solution for sorted w. The dual is the chain member at alpha
/// in the form c_{V | V'} with V' the smallest alpha-|V| labels outside V.
LPSolution closed_form_sym(const WeightVector& w, const SymmetricProfile& H, int alpha);

struct FeasibilityReport {
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

/// sum_{k in V} r^(l)_k >= H(U_V | U_V') for every |V| <= alpha, plus the
/// ratio inequalities (Hu_j - Hu_{j-i1})/i1 <= (Hu_j - Hu_{j-i2})/i2 for
/// 1 <= i1 <= i2 <= j <= alpha.
FeasibilityReport feasibility_check_rl(const SymmetricProfile& H, int alpha, int l, double tol = kEntropyTol);

/// Level alpha-1 from level alpha. Throws std::domain_error when lambda = 0 and
/// std::logic_error when the result misses C^w_{K,alpha-1}.
SymMultiplierFamily recurse_multiplier(const SymMultiplierFamily& c, const WeightVector& w, ThetaRecord* record = nullptr);

/// Seed at alpha = K: c_{[1:k],K} = w_k - w_{k+1}.
SymMultiplierFamily seed_family(const WeightVector& w);

/// Splits a plain c_V map into the prefix/top representation for level alpha.
SymMultiplierFamily family_from_map(const std::map<SubsetId, Rational>& c, const WeightVector& w, int alpha);

struct SymChain {
    int K = 0;
    WeightVector w;           // caller labelling
    WeightVector sorted_w;
    std::vector<int> order;   // order[i] = caller label of sorted position i+1
    std::vector<SymMultiplierFamily> levels;  // levels[a-1] is level a, sorted labelling
    std::vector<ThetaRecord> thetas;          // thetas[a-1]

    /// Level a functional sum_V c_{V,a} H(X_V) in caller labels.
    prover::EntropyFunctional functional(int alpha) const;
    /// Level a as c_{V|V'} keys in caller labels.
    MultiplierFamily multipliers(int alpha) const;
};

/// Full chain alpha = K..1. Zero weights go through the trailing-zero
/// reduction; w = 0 gives the all-zero chain.
SymChain build_chain(const WeightVector& w, int K);

struct FamilyReport {
    bool support_ok = true;
    bool prefix_ok = true;
    bool partial_sum_ok = true;  // sum over Omega = lambda
    bool weights_ok = true;      // per-k sums = w_k
    bool nonneg_ok = true;
    bool theta_ok = true;        // theta >= 0 and matches prev when given
    bool full_sum_ok = true;
    std::optional<Rational> theta;
    std::vector<std::string> problems;

    bool pass() const {
        return support_ok && prefix_ok && partial_sum_ok && weights_ok && nonneg_ok && theta_ok && full_sum_ok;
    }
};

/// All level identities on exact rationals. w sorted.
FamilyReport verify_family(const SymMultiplierFamily& c, const WeightVector& w,
                           const SymMultiplierFamily* prev = nullptr);

/// verify_family on every level of the chain, with prev linked.
std::vector<FamilyReport> verify_chain_families(const SymChain& chain);

struct SymChainReport {
    prover::ChainReport steps;  // consecutive levels
    bool pass() const { return steps.pass(); }
};

/// Proves F(level a) >= F(level a+1) for a = 1..K-1.
SymChainReport verify_sym_chain_inequality(const SymChain& chain);

class NoCanonicalMember : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Member of C^w_{K,alpha} whose top entries are lexicographically smallest
/// in the ascending order of Omega masks; w sorted.
SymMultiplierFamily canonical_member(const WeightVector& w, int alpha);

}  // namespace dmldc::sym
