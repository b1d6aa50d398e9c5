#include "dmldc/lp.hpp"

#include "dmldc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dmldc {

void validate_weights(const WeightVector& w) {
    if (w.empty()) throw std::invalid_argument("weights: empty vector");
    for (std::size_t k = 0; k < w.size(); ++k)
        if (sgn(w[k]) < 0) throw std::invalid_argument("weights: w_" + std::to_string(k + 1) + " is negative");
}

bool is_sorted_desc(const WeightVector& w) {
    for (std::size_t k = 1; k < w.size(); ++k)
        if (w[k] > w[k - 1]) return false;
    return true;
}

std::vector<int> descending_order(const WeightVector& w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a - 1] > w[b - 1]; });
    return order;
}

SubsetId map_subset(SubsetId V, const std::vector<int>& order) {
    SubsetId out;
    for (int i : V.elements()) out = out.with(order.at(static_cast<std::size_t>(i - 1)));
    return out;
}

Rational MultiplierFamily::get(SubsetId V, SubsetId Vp) const {
    const auto it = entries.find({V, Vp});
    return it == entries.end() ? Rational(0) : it->second;
}

void MultiplierFamily::add(SubsetId V, SubsetId Vp, const Rational& c) {
    entries[{V, Vp}] += c;
}

void MultiplierFamily::prune() {
    std::erase_if(entries, [](const auto& kv) { return sgn(kv.second) == 0; });
}

LPInstance make_instance(const EntropyProfile& profile, int alpha, WeightVector w) {
    validate_weights(w);
    if (static_cast<int>(w.size()) != profile.K())
        throw std::invalid_argument("weights: expected " + std::to_string(profile.K()) + " entries");
    return {std::move(w), build_layer_region(profile, alpha)};
}

std::string to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

template <class T>
T convert(double v) {
    if constexpr (std::is_same_v<T, double>) return v;
    else return from_double(v);
}

template <class T>
T convert(const Rational& v) {
    if constexpr (std::is_same_v<T, double>) return v.get_d();
    else return v;
}

template <class T>
double as_double(const T& v) {
    if constexpr (std::is_same_v<T, double>) return v;
    else return v.get_d();
}

// Variables are shifted, x_k = r_k - lb_k, where lb_k is the largest singleton
// right-hand side for k; r_k >= lb_k is itself a constraint, so x >= 0 loses
// nothing. The reduced cost of x_k is then folded into that singleton row.
template <class T>
LPSolution solve_impl(const LPInstance& inst, const SolveMode& mode) {
    const LayerRegion& reg = inst.region;
    const int K = reg.K;
    const auto& hs = reg.halfspaces;
    std::vector<T> lb(K, T(0));
    std::vector<int> lb_row(K, -1);
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hs[i].V.size() != 1) continue;
        const int k = hs[i].V.elements().front() - 1;
        const T rhs = convert<T>(hs[i].rhs);
        if (lb_row[k] < 0 || rhs > lb[k]) lb[k] = rhs, lb_row[k] = static_cast<int>(i);
    }
    for (int k = 0; k < K; ++k)
        if (lb_row[k] < 0) throw std::logic_error("layer region lacks a singleton constraint");

    simplex::Problem<T> prob;
    prob.num_vars = K;
    prob.cost.resize(K);
    for (int k = 0; k < K; ++k) prob.cost[k] = convert<T>(inst.w[k]);
    for (const Halfspace& h : hs) {
        std::vector<T> row(K, T(0));
        T b = convert<T>(h.rhs);
        for (int k = 0; k < K; ++k)
            if (h.coeffs[k] != 0) {
                row[k] = T(h.coeffs[k]);
                b -= T(h.coeffs[k]) * lb[k];
            }
        prob.add_row(std::move(row), simplex::Sense::Ge, std::move(b));
    }
    const simplex::Result<T> res = simplex::solve(prob);
    LPSolution sol;
    switch (res.status) {
        case simplex::Status::Optimal: sol.status = LPStatus::Optimal; break;
        case simplex::Status::Infeasible: sol.status = LPStatus::Infeasible; return sol;
        case simplex::Status::Unbounded: sol.status = LPStatus::Unbounded; return sol;
        case simplex::Status::IterationLimit: throw std::runtime_error("simplex: iteration limit reached");
    }
    std::vector<T> y = res.y;
    for (int k = 0; k < K; ++k) y[lb_row[k]] += res.reduced[k];

    sol.primal.rates.resize(K);
    T value(0);
    for (int k = 0; k < K; ++k) {
        const T r = res.x[k] + lb[k];
        sol.primal.rates[k] = as_double(r);
        value += prob.cost[k] * r;
    }
    sol.value = as_double(value);
    sol.dual.alpha = reg.alpha;
    sol.dual.exact = std::is_same_v<T, Rational>;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if constexpr (std::is_same_v<T, double>) {
            if (y[i] > 0.0) sol.dual.add(hs[i].V, hs[i].Vp, from_double(y[i]));
        } else {
            if (sgn(y[i]) < 0) throw std::logic_error("exact simplex produced a negative dual");
            if (sgn(y[i]) > 0) sol.dual.add(hs[i].V, hs[i].Vp, y[i]);
        }
    }

    if constexpr (std::is_same_v<T, double>) {
        for (std::size_t i = 0; i < hs.size(); ++i) {
            double lhs = 0.0;
            for (int k = 0; k < K; ++k) lhs += hs[i].coeffs[k] * sol.primal.rates[k];
            const double slack = lhs - hs[i].rhs;
            if (slack < -mode.feas_tol)
                throw std::runtime_error("simplex: primal infeasible by " + std::to_string(-slack) + " at " +
                                         hs[i].V.to_string() + "|" + hs[i].Vp.to_string());
            if (y[i] > 0.0 && y[i] * slack > mode.cs_tol)
                throw std::runtime_error("simplex: complementary slackness violated at " + hs[i].V.to_string() +
                                         "|" + hs[i].Vp.to_string());
        }
    }
    return sol;
}

}  // namespace

LPSolution solve_simplex(const LPInstance& instance, SolveMode mode) {
    validate_weights(instance.w);
    if (static_cast<int>(instance.w.size()) != instance.region.K)
        throw std::invalid_argument("LP instance: weight length differs from K");
    return mode.exact ? solve_impl<Rational>(instance, mode) : solve_impl<double>(instance, mode);
}

bool weight_identity_holds(const MultiplierFamily& c, const WeightVector& w) {
    const int K = static_cast<int>(w.size());
    std::vector<Rational> sums(K, Rational(0));
    for (const auto& [key, v] : c.entries)
        for (int k : key.V.elements())
            if (k <= K) sums[k - 1] += v;
    for (int k = 0; k < K; ++k)
        if (sums[k] != w[k]) return false;
    return true;
}

MultiplierReport verify_multiplier(const MultiplierFamily& c, const WeightVector& w, const EntropyProfile& profile,
                                   int alpha, double claimed_value, double tol) {
    MultiplierReport rep;
    const int K = profile.K();
    if (static_cast<int>(w.size()) != K) throw std::invalid_argument("verify_multiplier: weight length differs from K");
    std::vector<Rational> sums(K, Rational(0));
    double lhs = 0.0;
    for (const auto& [key, v] : c.entries) {
        const bool key_ok = !key.V.empty() && key.V.disjoint(key.Vp) && key.V.size() + key.Vp.size() == alpha &&
                            (key.V | key.Vp).within(K);
        if (!key_ok) {
            rep.keys_ok = false;
            rep.problems.push_back("inadmissible key " + key.V.to_string() + "|" + key.Vp.to_string());
            continue;
        }
        if (sgn(v) < 0) {
            rep.nonneg_ok = false;
            rep.problems.push_back("negative multiplier at " + key.V.to_string() + "|" + key.Vp.to_string() + " = " +
                                   to_string(v));
        }
        for (int k : key.V.elements()) sums[k - 1] += v;
        lhs += v.get_d() * cond_entropy(profile, alpha, key.V, key.Vp);
    }
    for (int k = 0; k < K; ++k) {
        const bool ok = c.exact ? sums[k] == w[k] : std::abs(Rational(sums[k] - w[k]).get_d()) <= tol;
        if (!ok) {
            rep.weights_ok = false;
            rep.problems.push_back("weight identity fails at k=" + std::to_string(k + 1) + ": " + to_string(sums[k]) +
                                   " != " + to_string(w[k]));
        }
    }
    rep.lhs_value = lhs;
    if (std::abs(lhs - claimed_value) > tol * std::max(1.0, std::abs(claimed_value))) {
        rep.value_ok = false;
        std::ostringstream os;
        os.precision(17);
        os << "value identity fails: " << lhs << " != " << claimed_value;
        rep.problems.push_back(os.str());
    }
    return rep;
}

LPSolution closed_form_alpha1(const WeightVector& w, const EntropyProfile& profile) {
    validate_weights(w);
    const int K = profile.K();
    if (static_cast<int>(w.size()) != K) throw std::invalid_argument("weights: expected " + std::to_string(K) + " entries");
    LPSolution sol;
    sol.status = LPStatus::Optimal;
    sol.dual.alpha = 1;
    sol.primal.rates.resize(K);
    for (int k = 1; k <= K; ++k) {
        const SubsetId V = SubsetId::of({k});
        const double h = profile.H(1, V);
        sol.primal.rates[k - 1] = h;
        sol.value += w[k - 1].get_d() * h;
        if (sgn(w[k - 1]) != 0) sol.dual.add(V, SubsetId(), w[k - 1]);
    }
    return sol;
}

LPSolution closed_form_alphaK(const WeightVector& w, const EntropyProfile& profile) {
    validate_weights(w);
    const int K = profile.K();
    if (static_cast<int>(w.size()) != K) throw std::invalid_argument("weights: expected " + std::to_string(K) + " entries");
    const std::vector<int> order = descending_order(w);
    LPSolution sol;
    sol.status = LPStatus::Optimal;
    sol.dual.alpha = K;
    sol.primal.rates.resize(K);
    for (int i = 1; i <= K; ++i) {
        const int k = order[i - 1];
        const SubsetId after = map_subset(SubsetId::range(i + 1, K), order);
        sol.primal.rates[k - 1] = cond_entropy(profile, K, SubsetId::of({k}), after);
        sol.value += w[k - 1].get_d() * sol.primal.rates[k - 1];
        const Rational next = i < K ? w[order[i] - 1] : Rational(0);
        const Rational c = w[k - 1] - next;
        if (sgn(c) != 0) sol.dual.add(map_subset(SubsetId::range(1, i), order), after, c);
    }
    return sol;
}

WeightClass weight_class(const WeightVector& w, int alpha) {
    const int K = static_cast<int>(w.size());
    if (alpha < 1 || alpha > K) throw std::domain_error("weight_class: alpha outside [1:K]");
    if (!is_sorted_desc(w)) throw std::domain_error("weight_class: weights must be sorted nonincreasing");
    std::vector<Rational> tail(K + 1, Rational(0));  // tail[l] = sum_{k>l} w_k
    for (int k = K - 1; k >= 0; --k) tail[k] = tail[k + 1] + w[k];
    int l = 0;
    for (int cand = 1; cand <= alpha - 1; ++cand) {
        if (w[cand - 1] * (alpha - cand) > tail[cand]) l = cand;
        else break;
    }
    WeightClass wc;
    wc.l = l;
    wc.lambda = tail[l] / (alpha - l);
    wc.lambda.canonicalize();
    return wc;
}

}  // namespace dmldc
