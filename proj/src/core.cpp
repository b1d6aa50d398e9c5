#include "dmldc/core.hpp"

#include "dmldc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dmldc {

std::size_t LayerPmf::cell_count() const {
    std::size_t n = 1;
    for (int a : alphabet_sizes) n *= static_cast<std::size_t>(a);
    return n;
}

void validate_layer(const LayerPmf& layer, int K, double tol, std::size_t cell_cap, const std::string& where) {
    if (layer.K() != K)
        throw std::invalid_argument(where + ": expected " + std::to_string(K) + " alphabet sizes, got " +
                                    std::to_string(layer.K()));
    std::size_t cells = 1;
    for (std::size_t k = 0; k < layer.alphabet_sizes.size(); ++k) {
        const int a = layer.alphabet_sizes[k];
        if (a < 1)
            throw std::invalid_argument(where + ": alphabet size of component " + std::to_string(k + 1) +
                                        " must be >= 1");
        cells *= static_cast<std::size_t>(a);
        if (cells > cell_cap)
            throw std::invalid_argument(where + ": " + std::to_string(cells) + "+ cells exceeds cap " +
                                        std::to_string(cell_cap));
    }
    if (layer.probs.size() != cells)
        throw std::invalid_argument(where + ": probs has " + std::to_string(layer.probs.size()) +
                                    " entries, expected " + std::to_string(cells));
    double sum = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double p = layer.probs[i];
        if (!std::isfinite(p) || p < 0.0)
            throw std::invalid_argument(where + ": probs[" + std::to_string(i) + "] is negative or not finite");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << where << ": probs sum to " << sum << ", not 1";
        throw std::invalid_argument(os.str());
    }
}

void validate_source(const LayeredSource& src, double tol, std::size_t cell_cap) {
    if (src.K < 1 || src.K > kMaxK)
        throw std::invalid_argument("source: K must lie in [1:" + std::to_string(kMaxK) + "]");
    if (static_cast<int>(src.layers.size()) != src.K)
        throw std::invalid_argument("source: expected " + std::to_string(src.K) + " layers, got " +
                                    std::to_string(src.layers.size()));
    for (int a = 1; a <= src.K; ++a)
        validate_layer(src.layers[a - 1], src.K, tol, cell_cap, "layer " + std::to_string(a));
}

namespace {

std::vector<double> marginal(const LayerPmf& layer, SubsetId V) {
    const int K = layer.K();
    std::vector<std::size_t> stride(K, 0);
    std::size_t msize = 1;
    for (int k = K - 1; k >= 0; --k) {
        if (V.contains(k + 1)) {
            stride[k] = msize;
            msize *= static_cast<std::size_t>(layer.alphabet_sizes[k]);
        }
    }
    std::vector<double> m(msize, 0.0);
    std::vector<int> coord(K, 0);
    std::size_t idx = 0;
    const std::size_t cells = layer.probs.size();
    for (std::size_t c = 0; c < cells; ++c) {
        m[idx] += layer.probs[c];
        for (int k = K - 1; k >= 0; --k) {
            ++coord[k];
            idx += stride[k];
            if (coord[k] < layer.alphabet_sizes[k]) break;
            idx -= stride[k] * static_cast<std::size_t>(layer.alphabet_sizes[k]);
            coord[k] = 0;
        }
    }
    return m;
}

}  // namespace

double entropy_of_subset(const LayerPmf& layer, SubsetId V) {
    if (V.empty()) throw std::domain_error("entropy_of_subset: V must be nonempty");
    if (!V.within(layer.K())) throw std::domain_error("entropy_of_subset: V " + V.to_string() + " exceeds K");
    const std::vector<double> m = marginal(layer, V);
    return kernels::neg_plogp_sum(m);
}

std::vector<double> all_subset_entropies(const LayerPmf& layer) {
    const std::uint32_t n = 1u << layer.K();
    std::vector<double> h(n, 0.0);
    for (std::uint32_t mask = 1; mask < n; ++mask) h[mask] = entropy_of_subset(layer, SubsetId(mask));
    return h;
}

EntropyProfile::EntropyProfile(int K, ProfileOrigin origin)
    : K_(K), origin_(origin), values_(static_cast<std::size_t>(K), std::vector<double>(std::size_t{1} << K, 0.0)) {
    if (K < 1 || K > kMaxK) throw std::invalid_argument("profile: K must lie in [1:" + std::to_string(kMaxK) + "]");
}

double EntropyProfile::H(int alpha, SubsetId V) const {
    if (V.empty()) return 0.0;
    return values_.at(static_cast<std::size_t>(alpha - 1)).at(V.mask);
}

void EntropyProfile::set(int alpha, SubsetId V, double bits) {
    if (V.empty()) return;
    values_.at(static_cast<std::size_t>(alpha - 1)).at(V.mask) = bits;
}

const std::vector<double>& EntropyProfile::layer(int alpha) const {
    return values_.at(static_cast<std::size_t>(alpha - 1));
}

void EntropyProfile::set_layer(int alpha, std::vector<double> values) {
    if (values.size() != (std::size_t{1} << K_)) throw std::invalid_argument("profile layer has wrong size");
    values[0] = 0.0;
    values_.at(static_cast<std::size_t>(alpha - 1)) = std::move(values);
}

double cond_entropy(const EntropyProfile& profile, int alpha, SubsetId V, SubsetId Vp) {
    if (V.empty()) throw std::domain_error("cond_entropy: V must be nonempty");
    if (!V.disjoint(Vp))
        throw std::domain_error("cond_entropy: V " + V.to_string() + " overlaps V' " + Vp.to_string());
    return profile.H(alpha, V | Vp) - profile.H(alpha, Vp);
}

EntropyProfile build_profile(const LayeredSource& src) {
    validate_source(src);
    EntropyProfile p(src.K, ProfileOrigin::FromPmf);
    for (int a = 1; a <= src.K; ++a) p.set_layer(a, all_subset_entropies(src.layers[a - 1]));
    return p;
}

void SymmetricProfile::validate(double tol) const {
    if (static_cast<int>(H.size()) != K) throw std::invalid_argument("symmetric profile: expected K layers");
    for (int a = 1; a <= K; ++a) {
        const auto& row = H[a - 1];
        if (static_cast<int>(row.size()) != K + 1)
            throw std::invalid_argument("symmetric profile: layer " + std::to_string(a) + " needs K+1 entries");
        if (row[0] != 0.0) throw std::invalid_argument("symmetric profile: H[0," + std::to_string(a) + "] must be 0");
        for (int m = 1; m <= K; ++m)
            if (row[m] < row[m - 1] - tol)
                throw std::invalid_argument("symmetric profile: H[m," + std::to_string(a) +
                                            "] decreases at m=" + std::to_string(m));
    }
}

std::optional<SymmetricProfile> is_symmetric_entropywise(const EntropyProfile& profile, double tol) {
    const int K = profile.K();
    SymmetricProfile sym{K, std::vector<std::vector<double>>(K, std::vector<double>(K + 1, 0.0))};
    for (int a = 1; a <= K; ++a) {
        for (int m = 1; m <= K; ++m) {
            const auto sets = subsets_of_size(K, m);
            double lo = profile.H(a, sets.front());
            double hi = lo;
            double sum = 0.0;
            for (SubsetId V : sets) {
                const double h = profile.H(a, V);
                lo = std::min(lo, h);
                hi = std::max(hi, h);
                sum += h;
            }
            if (hi - lo > tol) return std::nullopt;
            sym.H[a - 1][m] = sum / static_cast<double>(sets.size());
        }
    }
    return sym;
}

EntropyProfile expand_symmetric(const SymmetricProfile& sym) {
    EntropyProfile p(sym.K, ProfileOrigin::Abstract);
    for (int a = 1; a <= sym.K; ++a)
        for (std::uint32_t mask = 1; mask < (1u << sym.K); ++mask)
            p.set(a, SubsetId(mask), sym.at(std::popcount(mask), a));
    return p;
}

std::string PolymatroidViolation::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "layer " << alpha << ": ";
    switch (kind) {
        case Kind::Negative: os << "H(" << a.to_string() << ") < 0"; break;
        case Kind::Monotonicity: os << "H(" << a.to_string() << ") > H(" << b.to_string() << ")"; break;
        case Kind::Submodularity:
            os << "H(" << a.to_string() << ") + H(" << b.to_string() << ") < H(union) + H(intersection)";
            break;
    }
    os << " by " << amount;
    return os.str();
}

namespace {

void check_vector(const std::vector<double>& h, int K, int alpha, double tol, PolymatroidReport& report) {
    using Kind = PolymatroidViolation::Kind;
    const std::uint32_t n = 1u << K;
    for (std::uint32_t m = 1; m < n; ++m)
        if (h[m] < -tol) report.violations.push_back({Kind::Negative, alpha, SubsetId(m), SubsetId(), -h[m]});
    const SubsetId full = SubsetId::full(K);
    for (std::uint32_t m = 1; m < n; ++m) {
        const SubsetId V(m);
        for (int i : V.elements()) {
            const SubsetId smaller = V.without(i);
            const double gap = h[smaller.mask] - h[m];
            if (gap > tol) report.violations.push_back({Kind::Monotonicity, alpha, smaller, V, gap});
        }
    }
    for (int i = 1; i <= K; ++i) {
        for (int j = i + 1; j <= K; ++j) {
            const SubsetId others = full.without(i).without(j);
            for (std::uint32_t w = others.mask;; w = (w - 1) & others.mask) {
                const SubsetId W(w);
                const SubsetId A = W.with(i);
                const SubsetId B = W.with(j);
                const double gap = h[(A | B).mask] + h[W.mask] - h[A.mask] - h[B.mask];
                if (gap > tol) report.violations.push_back({Kind::Submodularity, alpha, A, B, gap});
                if (w == 0) break;
            }
        }
    }
}

}  // namespace

PolymatroidReport validate_polymatroid(const EntropyProfile& profile, double tol) {
    PolymatroidReport report;
    for (int a = 1; a <= profile.K(); ++a) check_vector(profile.layer(a), profile.K(), a, tol, report);
    return report;
}

PolymatroidReport validate_polymatroid(const std::vector<double>& h, int K, double tol) {
    if (h.size() != (std::size_t{1} << K)) throw std::invalid_argument("entropy vector has wrong size");
    PolymatroidReport report;
    check_vector(h, K, 0, tol, report);
    return report;
}

EntropyProfile make_abstract_profile(int K, std::vector<std::vector<double>> layers, bool bypass, double tol) {
    if (static_cast<int>(layers.size()) != K) throw std::invalid_argument("abstract profile: expected K layers");
    EntropyProfile p(K, ProfileOrigin::Abstract);
    for (int a = 1; a <= K; ++a) {
        for (double v : layers[a - 1])
            if (!std::isfinite(v)) throw std::invalid_argument("abstract profile: non-finite entropy in layer " +
                                                               std::to_string(a));
        p.set_layer(a, std::move(layers[a - 1]));
    }
    if (!bypass) {
        const PolymatroidReport r = validate_polymatroid(p, tol);
        if (!r.ok()) throw std::invalid_argument("abstract profile is not a polymatroid: " + r.violations.front().describe());
    }
    return p;
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

double exp_draw(Rng& rng) { return -std::log1p(-uniform_unit(rng)); }

void normalize(std::vector<double>& p) {
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= s;
}

}  // namespace

LayerPmf random_layer(const std::vector<int>& alphabet_sizes, PmfShape shape, Rng& rng) {
    LayerPmf layer{alphabet_sizes, {}};
    const std::size_t cells = layer.cell_count();
    layer.probs.assign(cells, 0.0);
    switch (shape) {
        case PmfShape::Dense:
            for (double& p : layer.probs) p = exp_draw(rng);
            break;
        case PmfShape::Sparse: {
            bool any = false;
            for (double& p : layer.probs)
                if (uniform_unit(rng) < 0.4) p = exp_draw(rng), any = true;
            if (!any) layer.probs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(cells) - 1))] = 1.0;
            break;
        }
        case PmfShape::Structured: {
            // Each component is either fresh or a noisy function of an earlier one.
            const int K = layer.K();
            std::vector<int> parent(K, -1);
            std::vector<double> noise(K, 0.0);
            std::vector<std::vector<double>> fresh(K);
            std::vector<std::vector<int>> map(K);
            for (int k = 0; k < K; ++k) {
                fresh[k].resize(static_cast<std::size_t>(alphabet_sizes[k]));
                for (double& v : fresh[k]) v = exp_draw(rng);
                normalize(fresh[k]);
                if (k > 0 && uniform_unit(rng) < 0.7) {
                    parent[k] = static_cast<int>(uniform_int(rng, 0, k - 1));
                    const double r = uniform_unit(rng);
                    noise[k] = r < 0.5 ? 0.0 : r - 0.5;
                    map[k].resize(static_cast<std::size_t>(alphabet_sizes[parent[k]]));
                    for (int& m : map[k]) m = static_cast<int>(uniform_int(rng, 0, alphabet_sizes[k] - 1));
                }
            }
            std::vector<int> coord(K, 0);
            for (std::size_t c = 0; c < cells; ++c) {
                double p = 1.0;
                for (int k = 0; k < K; ++k) {
                    const double f = fresh[k][coord[k]];
                    if (parent[k] < 0) {
                        p *= f;
                    } else {
                        const bool hit = map[k][coord[parent[k]]] == coord[k];
                        p *= (1.0 - noise[k]) * (hit ? 1.0 : 0.0) + noise[k] * f;
                    }
                }
                layer.probs[c] = p;
                for (int k = K - 1; k >= 0; --k) {
                    if (++coord[k] < alphabet_sizes[k]) break;
                    coord[k] = 0;
                }
            }
            break;
        }
    }
    normalize(layer.probs);
    return layer;
}

LayeredSource random_source(int K, Rng& rng) {
    LayeredSource src{K, {}};
    for (int a = 0; a < K; ++a) {
        std::vector<int> sizes(K);
        for (int& s : sizes) s = static_cast<int>(uniform_int(rng, 2, 3));
        const auto shape = static_cast<PmfShape>(uniform_int(rng, 0, 2));
        src.layers.push_back(random_layer(sizes, shape, rng));
    }
    return src;
}

LayerPmf iid_bits_layer(int K) {
    LayerPmf layer{std::vector<int>(K, 2), std::vector<double>(std::size_t{1} << K, 1.0 / static_cast<double>(1u << K))};
    return layer;
}

LayerPmf equal_bits_layer(int K) {
    LayerPmf layer{std::vector<int>(K, 2), std::vector<double>(std::size_t{1} << K, 0.0)};
    layer.probs.front() = 0.5;
    layer.probs.back() = 0.5;
    return layer;
}

LayerPmf symmetrize_layer(const LayerPmf& layer) {
    const int K = layer.K();
    for (int a : layer.alphabet_sizes)
        if (a != layer.alphabet_sizes.front())
            throw std::invalid_argument("symmetrize_layer: alphabet sizes differ");
    const int q = K > 0 ? layer.alphabet_sizes.front() : 1;
    const std::size_t cells = layer.probs.size();
    LayerPmf out{layer.alphabet_sizes, std::vector<double>(cells, 0.0)};
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> digits(K);
    std::size_t count = 0;
    do {
        for (std::size_t c = 0; c < cells; ++c) {
            std::size_t rest = c;
            for (int k = K - 1; k >= 0; --k) {
                digits[k] = static_cast<int>(rest % q);
                rest /= q;
            }
            std::size_t target = 0;
            for (int k = 0; k < K; ++k) target = target * q + static_cast<std::size_t>(digits[perm[k]]);
            out.probs[target] += layer.probs[c];
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (double& p : out.probs) p /= static_cast<double>(count);
    return out;
}

LayerPmf random_symmetric_layer(int K, int q, Rng& rng) {
    const auto shape = static_cast<PmfShape>(uniform_int(rng, 0, 2));
    return symmetrize_layer(random_layer(std::vector<int>(K, q), shape, rng));
}

}  // namespace dmldc
