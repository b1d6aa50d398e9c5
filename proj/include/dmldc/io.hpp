#pragma once

// JSON readers and writers for sources, profiles, weights, multipliers,
// functionals, certificates and region dumps. Rationals are "p/q" strings.

#include "dmldc/core.hpp"
#include "dmldc/lp.hpp"
#include "dmldc/prover.hpp"
#include "dmldc/region.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dmldc::io {

using json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses a file; syntax errors report the byte offset.
json read_json_file(const std::string& path);

/// { "K", "layers": [ { "alphabets", "probs" } ] }. probs entries may be
/// numbers or "p/q" strings; when every entry is a string the sum must be 1
/// exactly.
LayeredSource source_from_json(const json& j);
json source_to_json(const LayeredSource& src);

/// { "K", "entropies": { "alpha:[V]": bits } } covering every alpha and
/// nonempty V. Rejected unless polymatroidal, except with bypass.
EntropyProfile profile_from_json(const json& j, bool bypass = false);
json profile_to_json(const EntropyProfile& p);

/// { "K", "H": [[H(0,alpha), ..., H(K,alpha)] per alpha] } (unconditional).
SymmetricProfile symmetric_from_json(const json& j);

/// "3,1,1" or "1/2,1/3"; nonnegative.
WeightVector parse_weights(const std::string& text);
json weights_to_json(const WeightVector& w);

/// { "alpha", "entries": [ { "V", "Vp", "c" } ] }.
MultiplierFamily multipliers_from_json(const json& j);
json multipliers_to_json(const MultiplierFamily& c);

/// { "K", "coeffs": { "[V]": "p/q" } }.
prover::EntropyFunctional functional_from_json(const json& j);
json functional_to_json(const prover::EntropyFunctional& f);

/// { "status": "proved" | "refuted", "target", "lambdas" | "counterexample" }.
json certificate_to_json(const prover::InequalityCertificate& cert);

json solution_to_json(const LPSolution& s);
json rate_point_to_json(const RatePoint& r);

/// One object per layer: { "alpha", "halfspaces": [ { "V", "Vp", "coeffs", "rhs" } ] }.
json region_to_json(const EntropyProfile& profile);

json subset_to_json(SubsetId V);
SubsetId subset_from_json(const json& j, const std::string& field);

}  // namespace dmldc::io
