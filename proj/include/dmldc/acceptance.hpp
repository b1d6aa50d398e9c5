#pragma once

// The seven acceptance criteria as callable checks. Shared by `mldc selftest`
// and the acceptance test binary.

#include "dmldc/k3.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dmldc::acceptance {

struct Options {
    std::uint64_t seed = 0;
    bool quick = false;
    int jobs = 1;
    /// Table used wherever the multiplier catalogue is consulted.
    const k3::MultiplierTable* table = nullptr;

    const k3::MultiplierTable& catalogue() const { return table ? *table : k3::canonical_table(); }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

CriterionResult duality_sweep(const Options& opt);         // 1
CriterionResult table_certificate_sweep(const Options& opt);  // 2
CriterionResult region_equality_sweep(const Options& opt);  // 3
CriterionResult symmetric_chain_sweep(const Options& opt);  // 4
CriterionResult anchors(const Options& opt);                // 5
CriterionResult prover_soundness(const Options& opt);       // 6
CriterionResult mutation_sensitivity(const Options& opt);   // 7

/// Runs the requested criteria (all when empty) in id order.
std::vector<CriterionResult> run(const Options& opt, const std::vector<int>& ids = {});

/// "criterion 1: PASS duality sweep (...) [0.420 s]".
std::string format_line(const CriterionResult& r);

/// Copy of `base` with the sign of coefficient a_coef (1..3) of column col
/// (1..6) in row `label` flipped. Throws std::invalid_argument when that
/// coefficient is zero or the label is unknown.
k3::MultiplierTable mutate_table(const k3::MultiplierTable& base, const std::string& label, int col, int coef);

/// Multiplier-table certificate check for one label: both chain steps proved for
/// every sampled w in the label's region and every admissible nu. Empty on
/// success, otherwise the first failure.
std::string check_label_chain(const std::string& label, const std::vector<WeightVector>& ws,
                              const k3::MultiplierTable& table);

/// Rational weights in the label's w-region (cases 1-3: w1 <= w2 + w3;
/// case 5: w1 > w2 + w3; case 4: any), sorted, positive.
std::vector<WeightVector> sample_label_weights(const std::string& label, int count, std::uint64_t seed);

/// Deterministic per-item seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace dmldc::acceptance
