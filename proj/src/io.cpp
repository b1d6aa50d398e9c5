#include "dmldc/io.hpp"

#include <fstream>
#include <sstream>

namespace dmldc::io {

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

int int_field(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

Rational rational_value(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_number()) return from_double(v.get<double>());
    } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected a number or \"p/q\" string");
}

int checked_K(const json& j, const std::string& where) {
    const int K = int_field(j, "K", where);
    if (K < 1 || K > kMaxK) throw InputError(where + ".K: must lie in [1:" + std::to_string(kMaxK) + "]");
    return K;
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

json subset_to_json(SubsetId V) { return V.elements(); }

SubsetId subset_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected a list of labels");
    std::vector<int> els;
    for (const json& e : j) {
        if (!e.is_number_integer() || e.get<int>() < 1 || e.get<int>() > kMaxK)
            throw InputError(where + ": labels must be integers in [1:" + std::to_string(kMaxK) + "]");
        els.push_back(e.get<int>());
    }
    return SubsetId::from_elements(els);
}

LayeredSource source_from_json(const json& j) {
    LayeredSource src;
    src.K = checked_K(j, "source");
    const json& layers = field(j, "layers", "source");
    if (!layers.is_array() || static_cast<int>(layers.size()) != src.K)
        throw InputError("source.layers: expected " + std::to_string(src.K) + " layers");
    for (std::size_t a = 0; a < layers.size(); ++a) {
        const std::string where = "source.layers[" + std::to_string(a) + "]";
        LayerPmf layer;
        const json& al = field(layers[a], "alphabets", where);
        if (!al.is_array()) throw InputError(where + ".alphabets: expected a list");
        for (const json& v : al) {
            if (!v.is_number_integer()) throw InputError(where + ".alphabets: expected integers");
            layer.alphabet_sizes.push_back(v.get<int>());
        }
        const json& pr = field(layers[a], "probs", where);
        if (!pr.is_array()) throw InputError(where + ".probs: expected a list");
        bool all_exact = !pr.empty();
        Rational exact_sum(0);
        for (std::size_t i = 0; i < pr.size(); ++i) {
            const std::string w = where + ".probs[" + std::to_string(i) + "]";
            if (pr[i].is_string()) {
                const Rational q = rational_value(pr[i], w);
                exact_sum += q;
                layer.probs.push_back(q.get_d());
            } else if (pr[i].is_number()) {
                all_exact = false;
                layer.probs.push_back(pr[i].get<double>());
            } else {
                throw InputError(w + ": expected a number or \"p/q\" string");
            }
        }
        if (all_exact && exact_sum != 1)
            throw InputError("layer " + std::to_string(a + 1) + ": exact probabilities sum to " + to_string(exact_sum) +
                             ", not 1");
        src.layers.push_back(std::move(layer));
    }
    validate_source(src);
    return src;
}

json source_to_json(const LayeredSource& src) {
    json j;
    j["K"] = src.K;
    j["layers"] = json::array();
    for (const LayerPmf& l : src.layers) j["layers"].push_back({{"alphabets", l.alphabet_sizes}, {"probs", l.probs}});
    return j;
}

EntropyProfile profile_from_json(const json& j, bool bypass) {
    const int K = checked_K(j, "profile");
    const json& ent = field(j, "entropies", "profile");
    if (!ent.is_object()) throw InputError("profile.entropies: expected an object");
    const std::size_t n = std::size_t{1} << K;
    std::vector<std::vector<double>> layers(K, std::vector<double>(n, 0.0));
    std::vector<std::vector<bool>> seen(K, std::vector<bool>(n, false));
    for (const auto& [key, v] : ent.items()) {
        const std::string where = "profile.entropies[\"" + key + "\"]";
        const auto colon = key.find(':');
        if (colon == std::string::npos) throw InputError(where + ": key must look like \"alpha:[V]\"");
        int alpha = 0;
        SubsetId V;
        try {
            alpha = std::stoi(key.substr(0, colon));
            V = parse_subset(key.substr(colon + 1));
        } catch (const std::exception& e) {
            throw InputError(where + ": " + e.what());
        }
        if (alpha < 1 || alpha > K || V.empty() || !V.within(K)) throw InputError(where + ": alpha or V out of range");
        if (!v.is_number()) throw InputError(where + ": expected a number of bits");
        layers[alpha - 1][V.mask] = v.get<double>();
        seen[alpha - 1][V.mask] = true;
    }
    for (int a = 1; a <= K; ++a)
        for (std::uint32_t m = 1; m < n; ++m)
            if (!seen[a - 1][m])
                throw InputError("profile.entropies: missing \"" + std::to_string(a) + ":" + SubsetId(m).to_string() + "\"");
    try {
        return make_abstract_profile(K, std::move(layers), bypass);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

json profile_to_json(const EntropyProfile& p) {
    json ent = json::object();
    for (int a = 1; a <= p.K(); ++a)
        for (std::uint32_t m = 1; m < (1u << p.K()); ++m)
            ent[std::to_string(a) + ":" + SubsetId(m).to_string()] = p.H(a, SubsetId(m));
    return {{"K", p.K()}, {"entropies", ent}};
}

SymmetricProfile symmetric_from_json(const json& j) {
    SymmetricProfile s;
    s.K = checked_K(j, "symmetric profile");
    const json& H = field(j, "H", "symmetric profile");
    if (!H.is_array()) throw InputError("symmetric profile.H: expected a list of layers");
    for (std::size_t a = 0; a < H.size(); ++a) {
        if (!H[a].is_array()) throw InputError("symmetric profile.H[" + std::to_string(a) + "]: expected a list");
        std::vector<double> row;
        for (const json& v : H[a]) {
            if (!v.is_number()) throw InputError("symmetric profile.H[" + std::to_string(a) + "]: expected numbers");
            row.push_back(v.get<double>());
        }
        s.H.push_back(std::move(row));
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return s;
}

WeightVector parse_weights(const std::string& text) {
    WeightVector w;
    try {
        w = parse_rational_list(text);
        validate_weights(w);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("weights: ") + e.what());
    }
    for (Rational& v : w) v.canonicalize();
    return w;
}

json weights_to_json(const WeightVector& w) {
    json j = json::array();
    for (const Rational& v : w) j.push_back(to_string(v));
    return j;
}

MultiplierFamily multipliers_from_json(const json& j) {
    MultiplierFamily c;
    c.alpha = int_field(j, "alpha", "multipliers");
    c.exact = true;
    const json& es = field(j, "entries", "multipliers");
    if (!es.is_array()) throw InputError("multipliers.entries: expected a list");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string where = "multipliers.entries[" + std::to_string(i) + "]";
        const SubsetId V = subset_from_json(field(es[i], "V", where), where + ".V");
        const SubsetId Vp = subset_from_json(field(es[i], "Vp", where), where + ".Vp");
        Rational v = rational_value(field(es[i], "c", where), where + ".c");
        v.canonicalize();
        c.add(V, Vp, v);
    }
    return c;
}

json multipliers_to_json(const MultiplierFamily& c) {
    json es = json::array();
    for (const auto& [key, v] : c.entries)
        es.push_back({{"V", subset_to_json(key.V)}, {"Vp", subset_to_json(key.Vp)}, {"c", to_string(v)}});
    return {{"alpha", c.alpha}, {"exact", c.exact}, {"entries", es}};
}

prover::EntropyFunctional functional_from_json(const json& j) {
    const int K = checked_K(j, "functional");
    prover::EntropyFunctional f(K);
    const json& cs = field(j, "coeffs", "functional");
    if (!cs.is_object()) throw InputError("functional.coeffs: expected an object");
    for (const auto& [key, v] : cs.items()) {
        const std::string where = "functional.coeffs[\"" + key + "\"]";
        SubsetId V;
        try {
            V = parse_subset(key);
        } catch (const std::exception& e) {
            throw InputError(where + ": " + e.what());
        }
        if (V.empty() || !V.within(K)) throw InputError(where + ": subset must be nonempty within [1:K]");
        Rational q = rational_value(v, where);
        q.canonicalize();
        f.add(V, q);
    }
    return f;
}

json functional_to_json(const prover::EntropyFunctional& f) {
    json cs = json::object();
    for (std::size_t m = 1; m < f.coeffs.size(); ++m)
        if (sgn(f.coeffs[m]) != 0) cs[SubsetId(static_cast<std::uint32_t>(m)).to_string()] = to_string(f.coeffs[m]);
    return {{"K", f.K}, {"coeffs", cs}};
}

json certificate_to_json(const prover::InequalityCertificate& cert) {
    json j;
    j["status"] = cert.proved() ? "proved" : "refuted";
    j["target"] = functional_to_json(cert.target);
    if (cert.proved()) {
        const auto& el = prover::elemental_inequalities(cert.target.K);
        json l = json::object();
        for (std::size_t i = 0; i < cert.lambdas.size(); ++i)
            if (sgn(cert.lambdas[i]) != 0) l[el[i].name] = to_string(cert.lambdas[i]);
        j["lambdas"] = l;
    } else {
        json h = json::object();
        for (std::size_t m = 1; m < cert.counterexample.size(); ++m)
            h[SubsetId(static_cast<std::uint32_t>(m)).to_string()] = to_string(cert.counterexample[m]);
        j["counterexample"] = h;
        j["value"] = to_string(cert.counter_value);
    }
    return j;
}

json rate_point_to_json(const RatePoint& r) { return r.rates; }

json solution_to_json(const LPSolution& s) {
    json j;
    j["status"] = to_string(s.status);
    if (s.status == LPStatus::Optimal) {
        j["primal"] = rate_point_to_json(s.primal);
        j["value"] = s.value;
        j["dual"] = multipliers_to_json(s.dual);
    }
    return j;
}

json region_to_json(const EntropyProfile& profile) {
    json out = json::array();
    for (int a = 1; a <= profile.K(); ++a) {
        const LayerRegion reg = build_layer_region(profile, a);
        json hs = json::array();
        for (const Halfspace& h : reg.halfspaces)
            hs.push_back({{"V", subset_to_json(h.V)}, {"Vp", subset_to_json(h.Vp)}, {"coeffs", h.coeffs}, {"rhs", h.rhs}});
        out.push_back({{"alpha", a}, {"halfspaces", hs}});
    }
    return out;
}

}  // namespace dmldc::io
