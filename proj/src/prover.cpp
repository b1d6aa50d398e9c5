#include "dmldc/prover.hpp"

#include "dmldc/kernels.hpp"
#include "dmldc/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dmldc::prover {

EntropyFunctional::EntropyFunctional(int K_) : K(K_), coeffs(std::size_t{1} << K_, Rational(0)) {
    if (K_ < 1 || K_ > kMaxK) throw std::domain_error("functional: K outside [1:" + std::to_string(kMaxK) + "]");
}

void EntropyFunctional::add(SubsetId V, const Rational& c) {
    if (V.empty()) return;
    Rational q = c;
    q.canonicalize();
    coeffs.at(V.mask) += q;
}

bool EntropyFunctional::is_zero() const {
    for (const Rational& c : coeffs)
        if (sgn(c) != 0) return false;
    return true;
}

EntropyFunctional& EntropyFunctional::operator+=(const EntropyFunctional& o) {
    if (o.K != K) throw std::invalid_argument("functional: K mismatch");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

EntropyFunctional& EntropyFunctional::operator-=(const EntropyFunctional& o) {
    if (o.K != K) throw std::invalid_argument("functional: K mismatch");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

EntropyFunctional& EntropyFunctional::operator*=(const Rational& s) {
    Rational q = s;
    q.canonicalize();
    for (Rational& c : coeffs) c *= q;
    return *this;
}

Rational EntropyFunctional::evaluate(const std::vector<Rational>& h) const {
    Rational v(0);
    for (std::size_t m = 1; m < coeffs.size(); ++m)
        if (sgn(coeffs[m]) != 0) v += coeffs[m] * h.at(m);
    return v;
}

double EntropyFunctional::evaluate(const std::vector<double>& h) const {
    std::vector<double> c(coeffs.size());
    for (std::size_t m = 0; m < coeffs.size(); ++m) c[m] = coeffs[m].get_d();
    return kernels::dot(c, std::span<const double>(h.data(), c.size()));
}

std::string EntropyFunctional::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
        const Rational& c = coeffs[m];
        if (sgn(c) == 0) continue;
        os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
        const Rational mag = abs(c);
        if (mag != 1) os << dmldc::to_string(mag) << " ";
        os << "H" << SubsetId(static_cast<std::uint32_t>(m)).to_string();
        first = false;
    }
    return first ? "0" : os.str();
}

EntropyFunctional functional_from_multipliers(const MultiplierFamily& c, int K) {
    EntropyFunctional f(K);
    for (const auto& [key, v] : c.entries) {
        if (!(key.V | key.Vp).within(K)) throw std::domain_error("multiplier key exceeds K");
        f.add(key.V | key.Vp, v);
        f.add(key.Vp, -v);
    }
    return f;
}

EntropyFunctional symmetrize(const EntropyFunctional& f) {
    // Averaging over all relabellings spreads each coefficient evenly over its size class.
    EntropyFunctional out(f.K);
    std::vector<Rational> total(f.K + 1, Rational(0));
    for (std::size_t m = 1; m < f.coeffs.size(); ++m) total[std::popcount(m)] += f.coeffs[m];
    for (std::size_t m = 1; m < f.coeffs.size(); ++m) {
        const int s = std::popcount(m);
        out.coeffs[m] = total[s] / Rational(static_cast<long>(binomial(f.K, s)));
        out.coeffs[m].canonicalize();
    }
    return out;
}

long long elemental_count(int K) { return K + binomial(K, 2) * (K >= 2 ? (1LL << (K - 2)) : 0); }

namespace {

std::vector<Elemental> build_elementals(int K) {
    std::vector<Elemental> out;
    const SubsetId full = SubsetId::full(K);
    for (int i = 1; i <= K; ++i) {
        EntropyFunctional f(K);
        f.add(full, 1);
        f.add(full.without(i), -1);
        out.push_back({std::move(f), "H(N) - H(N\\" + std::to_string(i) + ")"});
    }
    for (int i = 1; i <= K; ++i) {
        for (int j = i + 1; j <= K; ++j) {
            const SubsetId rest = full.without(i).without(j);
            for (SubsetId W : [&] {
                     std::vector<SubsetId> ws;
                     for (std::uint32_t m = 0; m <= rest.mask; ++m)
                         if ((m & ~rest.mask) == 0) ws.emplace_back(m);
                     return ws;
                 }()) {
                EntropyFunctional f(K);
                f.add(W.with(i), 1);
                f.add(W.with(j), 1);
                f.add(W.with(i).with(j), -1);
                f.add(W, -1);
                out.push_back({std::move(f), "I(" + std::to_string(i) + ";" + std::to_string(j) + "|" +
                                                 W.to_string() + ")"});
            }
        }
    }
    return out;
}

}  // namespace

const std::vector<Elemental>& elemental_inequalities(int K) {
    if (K < 1 || K > kMaxK) throw std::domain_error("elemental_inequalities: K outside [1:" + std::to_string(kMaxK) + "]");
    static std::array<std::once_flag, kMaxK + 1> flags;
    static std::array<std::vector<Elemental>, kMaxK + 1> cache;
    std::call_once(flags[K], [K] { cache[K] = build_elementals(K); });
    return cache[K];
}

InequalityCertificate prove_nonneg(const EntropyFunctional& f_in, bool symmetrize_first) {
    InequalityCertificate cert;
    cert.target = symmetrize_first ? symmetrize(f_in) : f_in;
    const EntropyFunctional& f = cert.target;
    const int K = f.K;
    const auto& el = elemental_inequalities(K);
    const int ne = static_cast<int>(el.size());
    const std::uint32_t n = 1u << K;

    // Feasibility of sum lambda_j e_j = f, lambda >= 0; minimal total weight.
    simplex::Problem<Rational> prob;
    prob.num_vars = ne;
    prob.cost.assign(ne, Rational(1));
    for (std::uint32_t m = 1; m < n; ++m) {
        std::vector<Rational> row(ne);
        for (int j = 0; j < ne; ++j) row[j] = el[j].f.coeffs[m];
        prob.add_row(std::move(row), simplex::Sense::Eq, f.coeffs[m]);
    }
    const auto res = simplex::solve(prob);
    if (res.status == simplex::Status::Optimal) {
        cert.status = ProofStatus::Proved;
        cert.lambdas = res.x;
        return cert;
    }
    if (res.status != simplex::Status::Infeasible) throw std::runtime_error("prover: certificate LP failed");

    // Separating polymatroid point: min f.h over the cone slice h_N = 1.
    simplex::Problem<Rational> sep;
    const int nv = static_cast<int>(n) - 1;
    sep.num_vars = nv;
    sep.cost.resize(nv);
    for (int v = 0; v < nv; ++v) sep.cost[v] = f.coeffs[v + 1];
    for (const Elemental& e : el) {
        std::vector<Rational> row(nv);
        for (int v = 0; v < nv; ++v) row[v] = e.f.coeffs[v + 1];
        sep.add_row(std::move(row), simplex::Sense::Ge, Rational(0));
    }
    std::vector<Rational> top(nv, Rational(0));
    top[nv - 1] = 1;
    sep.add_row(std::move(top), simplex::Sense::Eq, Rational(1));
    const auto cex = simplex::solve(sep);
    if (cex.status != simplex::Status::Optimal) throw std::runtime_error("prover: counterexample LP failed");
    cert.status = ProofStatus::NotShannonProvable;
    cert.counterexample.assign(n, Rational(0));
    for (int v = 0; v < nv; ++v) cert.counterexample[v + 1] = cex.x[v];
    cert.counter_value = cex.value;
    return cert;
}

bool replay(const InequalityCertificate& cert) {
    const EntropyFunctional& f = cert.target;
    const auto& el = elemental_inequalities(f.K);
    if (cert.proved()) {
        if (cert.lambdas.size() != el.size()) return false;
        EntropyFunctional sum(f.K);
        for (std::size_t j = 0; j < el.size(); ++j) {
            if (sgn(cert.lambdas[j]) < 0) return false;
            if (sgn(cert.lambdas[j]) == 0) continue;
            EntropyFunctional term = el[j].f;
            term *= cert.lambdas[j];
            sum += term;
        }
        return sum == f;
    }
    const auto& h = cert.counterexample;
    if (h.size() != f.coeffs.size()) return false;
    for (const Elemental& e : el)
        if (sgn(e.f.evaluate(h)) < 0) return false;
    std::vector<double> hd(h.size());
    for (std::size_t m = 0; m < h.size(); ++m) hd[m] = h[m].get_d();
    if (!validate_polymatroid(hd, f.K, 0.0).ok()) return false;
    return f.evaluate(h).get_d() < -1e-12;
}

bool ChainReport::pass() const {
    for (const ChainStep& s : steps)
        if (!s.certificate.proved() || !s.replayed) return false;
    return true;
}

ChainReport verify_functional_chain(const std::vector<EntropyFunctional>& chain,
                                    const std::vector<std::pair<int, int>>& pairs_in) {
    std::vector<std::pair<int, int>> pairs = pairs_in;
    if (pairs.empty())
        for (int a = 1; a < static_cast<int>(chain.size()); ++a) pairs.emplace_back(a, a + 1);
    ChainReport rep;
    for (auto [a, b] : pairs) {
        if (a < 1 || b > static_cast<int>(chain.size()) || a >= b)
            throw std::invalid_argument("verify_star_chain: bad level pair");
        ChainStep step;
        step.from_alpha = a;
        step.to_alpha = b;
        step.certificate = prove_nonneg(chain[a - 1] - chain[b - 1]);
        step.replayed = replay(step.certificate);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

ChainReport verify_star_chain(const std::vector<MultiplierFamily>& chain, int K,
                              const std::vector<std::pair<int, int>>& pairs) {
    std::vector<EntropyFunctional> fs;
    fs.reserve(chain.size());
    for (const MultiplierFamily& c : chain) fs.push_back(functional_from_multipliers(c, K));
    return verify_functional_chain(fs, pairs);
}

double numeric_spotcheck(const EntropyFunctional& f_in, int trials, std::uint64_t seed, bool symmetrize_first,
                         int alphabet) {
    if (trials < 1) throw std::invalid_argument("numeric_spotcheck: trials must be >= 1");
    const EntropyFunctional f = symmetrize_first ? symmetrize(f_in) : f_in;
    std::vector<double> c(f.coeffs.size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = f.coeffs[m].get_d();
    Rng rng(seed);
    const std::vector<int> sizes(f.K, alphabet);
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const LayerPmf pmf = random_layer(sizes, static_cast<PmfShape>(t % 3), rng);
        const std::vector<double> h = all_subset_entropies(pmf);
        best = std::min(best, kernels::dot(c, h));
    }
    return best;
}

std::vector<std::vector<double>> sample_entropy_vectors(int K, int trials, std::uint64_t seed) {
    if (K < 1 || K > kMaxK) throw std::domain_error("sample_entropy_vectors: K outside [1:" + std::to_string(kMaxK) + "]");
    Rng rng(seed);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        std::vector<int> sizes(K);
        for (int& a : sizes) a = static_cast<int>(uniform_int(rng, 2, 3));
        out.push_back(all_subset_entropies(random_layer(sizes, static_cast<PmfShape>(t % 3), rng)));
    }
    return out;
}

double min_over_samples(const EntropyFunctional& f, const std::vector<std::vector<double>>& samples) {
    std::vector<double> c(f.coeffs.size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = f.coeffs[m].get_d();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : samples) best = std::min(best, kernels::dot(c, h));
    return best;
}

EntropyFunctional extended_han(int K, SubsetId V, int i) {
    const int n = V.size();
    if (!V.within(K) || V.empty()) throw std::domain_error("extended_han: V must be a nonempty subset of [1:K]");
    if (i < 0 || i > n - 1) throw std::domain_error("extended_han: i outside [0:|V|-1]");
    EntropyFunctional f(K);
    for (int tau = i + 1; tau <= n; ++tau) f.add(drop_rank(V, tau), 1);
    f.add(V, -(n - 1 - i));
    if (i > 0) f.add(prefix_ranks(V, i), -1);
    return f;
}

}  // namespace dmldc::prover
