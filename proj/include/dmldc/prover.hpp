#pragma once

// Shannon-type inequality prover over the polymatroid cone. Certificates are
// exact nonnegative rational combinations of the elemental inequalities.

#include "dmldc/core.hpp"
#include "dmldc/lp.hpp"
#include "dmldc/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmldc::prover {

/// sum_V coeffs[V] H(X_V), stored densely by mask (entry 0 unused).
struct EntropyFunctional {
    int K = 0;
    std::vector<Rational> coeffs;

    EntropyFunctional() = default;
    explicit EntropyFunctional(int K);

    Rational& operator[](SubsetId V) { return coeffs.at(V.mask); }
    const Rational& operator[](SubsetId V) const { return coeffs.at(V.mask); }
    /// Adds c to the coefficient of V; the empty set carries no coefficient.
    void add(SubsetId V, const Rational& c);
    bool is_zero() const;

    EntropyFunctional& operator+=(const EntropyFunctional& o);
    EntropyFunctional& operator-=(const EntropyFunctional& o);
    EntropyFunctional& operator*=(const Rational& s);
    friend EntropyFunctional operator-(EntropyFunctional a, const EntropyFunctional& b) { return a -= b; }
    friend EntropyFunctional operator+(EntropyFunctional a, const EntropyFunctional& b) { return a += b; }
    friend bool operator==(const EntropyFunctional& a, const EntropyFunctional& b) {
        return a.K == b.K && a.coeffs == b.coeffs;
    }

    /// Exact value on a rational entropy vector indexed by mask.
    Rational evaluate(const std::vector<Rational>& h) const;
    /// Floating value on an entropy vector indexed by mask.
    double evaluate(const std::vector<double>& h) const;
    /// "+1/2 H[1,2] - H[2]" style.
    std::string to_string() const;
};

/// sum c_{V|V'} (H(V u V') - H(V')).
EntropyFunctional functional_from_multipliers(const MultiplierFamily& c, int K);

/// Coefficients averaged over all K! relabellings.
EntropyFunctional symmetrize(const EntropyFunctional& f);

struct Elemental {
    EntropyFunctional f;
    std::string name;  // "H(N) - H(N\\i)" or "I(i;j|W)"
};

/// K monotonicity forms followed by C(K,2) 2^{K-2} conditional mutual
/// informations. Throws std::domain_error for K outside [1:8].
const std::vector<Elemental>& elemental_inequalities(int K);
long long elemental_count(int K);

enum class ProofStatus { Proved, NotShannonProvable };

struct InequalityCertificate {
    ProofStatus status = ProofStatus::NotShannonProvable;
    /// The functional actually certified (symmetrised when requested).
    EntropyFunctional target;
    /// Dense over elemental_inequalities(K) when Proved.
    std::vector<Rational> lambdas;
    /// Polymatroid point (by mask, h[N] = 1) with target . h < 0 when refuted.
    std::vector<Rational> counterexample;
    Rational counter_value;

    bool proved() const { return status == ProofStatus::Proved; }
};

InequalityCertificate prove_nonneg(const EntropyFunctional& f, bool symmetrize_first = false);

/// Exact replay: for Proved, sum lambda_i e_i == target with lambda >= 0; for
/// refutations, h satisfies every elemental inequality and target . h < -1e-12.
bool replay(const InequalityCertificate& cert);

struct ChainStep {
    int from_alpha = 0;
    int to_alpha = 0;
    InequalityCertificate certificate;
    bool replayed = false;
};

struct ChainReport {
    std::vector<ChainStep> steps;
    bool pass() const;
};

/// chain[a-1] is the family at level a. Proves F(chain[a]) - F(chain[b]) >= 0
/// for each requested pair (a, b), a < b; by default consecutive levels.
ChainReport verify_star_chain(const std::vector<MultiplierFamily>& chain, int K,
                              const std::vector<std::pair<int, int>>& pairs = {});
ChainReport verify_functional_chain(const std::vector<EntropyFunctional>& chain,
                                    const std::vector<std::pair<int, int>>& pairs = {});

/// Minimum of f over entropy vectors of random joint pmfs of K variables.
double numeric_spotcheck(const EntropyFunctional& f, int trials, std::uint64_t seed, bool symmetrize_first = false,
                         int alphabet = 2);

/// Entropy vectors (by mask) of random joint pmfs; component alphabets drawn
/// from {2, 3}, shapes cycled. Reusable across many functionals.
std::vector<std::vector<double>> sample_entropy_vectors(int K, int trials, std::uint64_t seed);
/// Minimum of f over precomputed entropy vectors.
double min_over_samples(const EntropyFunctional& f, const std::vector<std::vector<double>>& samples);

/// sum_{tau=i+1}^{|V|} H(<V>_{[1:|V|]\{tau}}) - (|V|-1-i) H(V) - H(<V>_{[1:i]}).
EntropyFunctional extended_han(int K, SubsetId V, int i);

}  // namespace dmldc::prover
