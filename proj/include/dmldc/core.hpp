#pragma once

#include "dmldc/subset.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dmldc {

/// Default tolerance (bits) for entropy comparisons.
inline constexpr double kEntropyTol = 1e-9;
/// Default cap on the number of cells in one layer's joint pmf.
inline constexpr std::size_t kDefaultCellCap = std::size_t{1} << 20;

/// Joint pmf of the K components of one layer. Cells are stored row-major
/// with the last component varying fastest.
struct LayerPmf {
    std::vector<int> alphabet_sizes;
    std::vector<double> probs;

    int K() const { return static_cast<int>(alphabet_sizes.size()); }
    std::size_t cell_count() const;
};

struct LayeredSource {
    int K = 0;
    std::vector<LayerPmf> layers;  // layers[alpha-1]
};

/// Throws std::invalid_argument naming the layer and invariant on failure.
void validate_layer(const LayerPmf& layer, int K, double tol = kEntropyTol,
                    std::size_t cell_cap = kDefaultCellCap, const std::string& where = "layer");
void validate_source(const LayeredSource& src, double tol = kEntropyTol,
                     std::size_t cell_cap = kDefaultCellCap);

/// H(U_V) in bits for nonempty V within the layer's components.
double entropy_of_subset(const LayerPmf& layer, SubsetId V);

/// H(U_V) for every mask V in [0, 2^K); entry 0 is 0.
std::vector<double> all_subset_entropies(const LayerPmf& layer);

enum class ProfileOrigin { FromPmf, Abstract };

/// Subset entropies H(U_{V,alpha}) for alpha in [1:K].
class EntropyProfile {
public:
    EntropyProfile() = default;
    EntropyProfile(int K, ProfileOrigin origin);

    int K() const { return K_; }
    ProfileOrigin origin() const { return origin_; }

    /// H(U_{V,alpha}); H(empty) = 0.
    double H(int alpha, SubsetId V) const;
    void set(int alpha, SubsetId V, double bits);

    /// All 2^K values of one layer, indexed by mask.
    const std::vector<double>& layer(int alpha) const;
    void set_layer(int alpha, std::vector<double> values);

private:
    int K_ = 0;
    ProfileOrigin origin_ = ProfileOrigin::Abstract;
    std::vector<std::vector<double>> values_;
};

/// H(V u Vp) - H(Vp). Throws std::domain_error for empty V or overlapping sets.
double cond_entropy(const EntropyProfile& profile, int alpha, SubsetId V, SubsetId Vp);

EntropyProfile build_profile(const LayeredSource& src);

/// Entropy of a layer that depends on |V| only. Stores the unconditional
/// values Hu(m, alpha) = H(U_{V,alpha}) for |V| = m.
struct SymmetricProfile {
    int K = 0;
    std::vector<std::vector<double>> H;  // H[alpha-1][m], m in [0:K]

    double at(int m, int alpha) const { return H.at(alpha - 1).at(m); }
    /// H(U_V | U_V') with |V| = m and |V| + |V'| = alpha.
    double conditional(int m, int alpha) const { return at(alpha, alpha) - at(alpha - m, alpha); }

    /// Throws std::invalid_argument when H[0][alpha] != 0 or m -> H is decreasing.
    void validate(double tol = kEntropyTol) const;
};

std::optional<SymmetricProfile> is_symmetric_entropywise(const EntropyProfile& profile,
                                                         double tol = kEntropyTol);

/// Expands a symmetric profile into a full EntropyProfile (origin Abstract).
EntropyProfile expand_symmetric(const SymmetricProfile& sym);

struct PolymatroidViolation {
    enum class Kind { Negative, Monotonicity, Submodularity };
    Kind kind;
    int alpha;
    SubsetId a;
    SubsetId b;
    double amount;  // size of the breach in bits
    std::string describe() const;
};

struct PolymatroidReport {
    std::vector<PolymatroidViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Nonnegativity, monotonicity and submodularity per layer.
PolymatroidReport validate_polymatroid(const EntropyProfile& profile, double tol = kEntropyTol);
/// Same checks on a single entropy vector indexed by mask.
PolymatroidReport validate_polymatroid(const std::vector<double>& h, int K, double tol = kEntropyTol);

/// Accepts an abstract profile; throws std::invalid_argument listing the first
/// violation unless `bypass` is set.
EntropyProfile make_abstract_profile(int K, std::vector<std::vector<double>> layers, bool bypass = false,
                                     double tol = kEntropyTol);

using Rng = std::mt19937_64;

/// Shapes used by the random source generator.
enum class PmfShape { Dense, Sparse, Structured };

/// Random joint pmf with the given alphabet sizes. Structured pmfs make some
/// components (noisy) functions of others so non-generic entropy patterns occur.
LayerPmf random_layer(const std::vector<int>& alphabet_sizes, PmfShape shape, Rng& rng);
/// K layers, each component binary or ternary, shapes mixed.
LayeredSource random_source(int K, Rng& rng);
/// Average of the pmf over all K! permutations of its components. Requires
/// equal alphabet sizes; the result is exchangeable.
LayerPmf symmetrize_layer(const LayerPmf& layer);
/// Exchangeable random layer: random_layer over q-ary components, symmetrised.
LayerPmf random_symmetric_layer(int K, int q, Rng& rng);
/// Layer of K independent fair bits.
LayerPmf iid_bits_layer(int K);
/// Layer where all K components equal one fair bit.
LayerPmf equal_bits_layer(int K);

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementations so outputs are reproducible across toolchains.
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
double uniform_unit(Rng& rng);

}  // namespace dmldc
