#include "dmldc/symmetric.hpp"

#include "dmldc/simplex.hpp"

#include <algorithm>
#include <sstream>

namespace dmldc::sym {

namespace {

SubsetId prefix_set(int k) { return k <= 0 ? SubsetId() : SubsetId::range(1, k); }

void require_sorted(const WeightVector& w, const char* who) {
    validate_weights(w);
    if (!is_sorted_desc(w)) throw std::domain_error(std::string(who) + ": weights must be sorted nonincreasing");
}

// c_{[1:l'],beta} with the convention w_0 = 0 when l' = 0.
Rational prefix_value(const SymMultiplierFamily& c, const WeightVector& w, int lp) {
    if (lp == 0) return c.l == 0 ? Rational(-c.lambda) : Rational(-w.at(0));
    const auto e = c.entries();
    const auto it = e.find(prefix_set(lp));
    return it == e.end() ? Rational(0) : it->second;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::map<SubsetId, Rational> SymMultiplierFamily::entries() const {
    std::map<SubsetId, Rational> out;
    for (int k = 1; k <= static_cast<int>(prefix.size()); ++k)
        if (sgn(prefix[k - 1]) != 0) out[prefix_set(k)] += prefix[k - 1];
    for (const auto& [V, v] : top)
        if (sgn(v) != 0) out[V] += v;
    return out;
}

Rational SymMultiplierFamily::total() const {
    Rational s(0);
    for (const Rational& v : prefix) s += v;
    for (const auto& [V, v] : top) s += v;
    return s;
}

Rational compute_theta(const SymMultiplierFamily& c, const WeightVector& w) {
    const int a = c.alpha;
    if (a < 2) throw std::domain_error("theta is defined for alpha >= 2");
    const int lp = weight_class(w, a - 1).l;
    Rational s(0);
    for (int k = lp + 1; k <= c.l; ++k) s += (a - 1 - k) * c.prefix.at(k - 1);
    Rational theta = (c.lambda - s) / (a - 1 - lp);
    theta.canonicalize();
    return theta;
}

std::vector<double> r_of_l(const SymmetricProfile& H, int alpha, int l) {
    if (alpha < 1 || alpha > H.K) throw std::domain_error("r_of_l: alpha outside [1:K]");
    if (l < 0 || l > alpha - 1) throw std::domain_error("r_of_l: l outside [0:alpha-1]");
    auto Hc = [&](int m) { return H.conditional(m, alpha); };
    std::vector<double> r(H.K);
    for (int k = 1; k <= H.K; ++k)
        r[k - 1] = k <= l ? Hc(k) - Hc(k - 1) : (Hc(alpha) - Hc(l)) / (alpha - l);
    return r;
}

LPSolution closed_form_sym(const WeightVector& w, const SymmetricProfile& H, int alpha) {
    require_sorted(w, "closed_form_sym");
    if (static_cast<int>(w.size()) != H.K) throw std::invalid_argument("closed_form_sym: weight length differs from K");
    H.validate();
    const WeightClass wc = weight_class(w, alpha);
    LPSolution sol;
    sol.status = LPStatus::Optimal;
    sol.primal.rates = r_of_l(H, alpha, wc.l);
    for (int k = 0; k < H.K; ++k) sol.value += w[k].get_d() * sol.primal.rates[k];
    sol.dual = build_chain(w, H.K).multipliers(alpha);
    return sol;
}

FeasibilityReport feasibility_check_rl(const SymmetricProfile& H, int alpha, int l, double tol) {
    FeasibilityReport rep;
    const std::vector<double> r = r_of_l(H, alpha, l);
    for (std::uint32_t m = 1; m < (1u << H.K); ++m) {
        const SubsetId V(m);
        if (V.size() > alpha) continue;
        double lhs = 0.0;
        for (int k : V.elements()) lhs += r[k - 1];
        const double rhs = H.conditional(V.size(), alpha);
        if (lhs < rhs - tol)
            rep.violations.push_back("V=" + V.to_string() + ": sum r = " + fmt(lhs) + " < " + fmt(rhs));
    }
    for (int j = 1; j <= alpha; ++j)
        for (int i1 = 1; i1 <= j; ++i1)
            for (int i2 = i1 + 1; i2 <= j; ++i2) {
                const double a = (H.at(j, alpha) - H.at(j - i1, alpha)) / i1;
                const double b = (H.at(j, alpha) - H.at(j - i2, alpha)) / i2;
                if (a > b + tol)
                    rep.violations.push_back("ratio j=" + std::to_string(j) + " i1=" + std::to_string(i1) +
                                             " i2=" + std::to_string(i2) + ": " + fmt(a) + " > " + fmt(b));
            }
    return rep;
}

SymMultiplierFamily family_from_map(const std::map<SubsetId, Rational>& c, const WeightVector& w, int alpha) {
    const WeightClass wc = weight_class(w, alpha);
    SymMultiplierFamily f;
    f.K = static_cast<int>(w.size());
    f.alpha = alpha;
    f.l = wc.l;
    f.lambda = wc.lambda;
    f.prefix.assign(wc.l, Rational(0));
    for (const auto& [V, v] : c) {
        if (sgn(v) == 0) continue;
        const int k = V.size();
        if (k >= 1 && k <= wc.l && V == prefix_set(k)) f.prefix[k - 1] += v;
        else f.top[V] += v;
    }
    return f;
}

SymMultiplierFamily seed_family(const WeightVector& w) {
    require_sorted(w, "seed_family");
    const int K = static_cast<int>(w.size());
    std::map<SubsetId, Rational> c;
    for (int k = 1; k <= K; ++k) {
        const Rational v = w[k - 1] - (k < K ? w[k] : Rational(0));
        if (sgn(v) != 0) c[prefix_set(k)] = v;
    }
    return family_from_map(c, w, K);
}

SymMultiplierFamily recurse_multiplier(const SymMultiplierFamily& c, const WeightVector& w, ThetaRecord* record) {
    const int a = c.alpha;
    if (a < 2) throw std::domain_error("recurse_multiplier: alpha must be >= 2");
    if (sgn(c.lambda) <= 0) throw std::domain_error("recurse_multiplier: lambda is zero; use the zero-weight reduction");
    const Rational theta = compute_theta(c, w);
    const WeightClass next = weight_class(w, a - 1);
    const int lp = next.l;

    SymMultiplierFamily out;
    out.K = c.K;
    out.alpha = a - 1;
    out.l = lp;
    out.lambda = next.lambda;
    out.prefix.assign(lp, Rational(0));
    for (int k = 1; k < lp; ++k) out.prefix[k - 1] = w[k - 1] - w[k];
    if (lp >= 1) out.prefix[lp - 1] = w[lp - 1] - next.lambda;

    // Per (V, tau) the weight is theta/lambda plus the prefix mass of k in [l'+1 : min(l, tau-1)].
    for (const auto& [V, cv] : c.top) {
        if (sgn(cv) == 0) continue;
        Rational run(0);
        for (int tau = 1; tau <= a; ++tau) {
            if (tau - 1 >= lp + 1 && tau - 1 <= c.l) run += c.prefix.at(tau - 2);
            if (tau <= lp) continue;
            Rational coef = (theta + run) / c.lambda;
            out.top[drop_rank(V, tau)] += cv * coef;
        }
    }
    for (auto& [V, v] : out.top) v.canonicalize();
    std::erase_if(out.top, [](const auto& kv) { return sgn(kv.second) == 0; });

    const FamilyReport rep = verify_family(out, w, nullptr);
    if (!rep.pass())
        throw std::logic_error("recurse_multiplier: level " + std::to_string(a - 1) +
                               " result outside C^w: " + (rep.problems.empty() ? "" : rep.problems.front()));
    if (record) *record = {a, c.l, c.lambda, theta};
    return out;
}

namespace {

std::vector<SymMultiplierFamily> build_sorted(const WeightVector& ws) {
    const int K = static_cast<int>(ws.size());
    std::vector<SymMultiplierFamily> levels(K);
    bool all_zero = true;
    for (const Rational& v : ws) all_zero = all_zero && sgn(v) == 0;
    if (all_zero) {
        for (int a = 1; a <= K; ++a) levels[a - 1] = family_from_map({}, ws, a);
        return levels;
    }
    if (sgn(ws[K - 1]) > 0) {
        levels[K - 1] = seed_family(ws);
        for (int a = K; a >= 2; --a) levels[a - 2] = recurse_multiplier(levels[a - 1], ws);
        return levels;
    }
    // Trailing zero: embed the chain of the first K-1 weights; level K copies level K-1.
    const WeightVector head(ws.begin(), ws.end() - 1);
    const std::vector<SymMultiplierFamily> sub = build_sorted(head);
    for (int a = 1; a <= K - 1; ++a) levels[a - 1] = family_from_map(sub[a - 1].entries(), ws, a);
    levels[K - 1] = family_from_map(sub[K - 2].entries(), ws, K);
    return levels;
}

}  // namespace

SymChain build_chain(const WeightVector& w, int K) {
    validate_weights(w);
    if (K < 1 || K > kMaxK) throw std::domain_error("build_chain: K outside [1:" + std::to_string(kMaxK) + "]");
    if (static_cast<int>(w.size()) != K) throw std::invalid_argument("build_chain: weight length differs from K");
    SymChain ch;
    ch.K = K;
    ch.w = w;
    for (Rational& v : ch.w) v.canonicalize();
    ch.order = descending_order(ch.w);
    for (int i = 0; i < K; ++i) ch.sorted_w.push_back(ch.w[ch.order[i] - 1]);
    ch.levels = build_sorted(ch.sorted_w);
    for (int a = 1; a <= K; ++a) {
        const SymMultiplierFamily& f = ch.levels[a - 1];
        ThetaRecord t{a, f.l, f.lambda, std::nullopt};
        if (a >= 2) t.theta = compute_theta(f, ch.sorted_w);
        ch.thetas.push_back(t);
    }
    return ch;
}

prover::EntropyFunctional SymChain::functional(int alpha) const {
    prover::EntropyFunctional f(K);
    for (const auto& [V, v] : levels.at(alpha - 1).entries()) f.add(map_subset(V, order), v);
    return f;
}

MultiplierFamily SymChain::multipliers(int alpha) const {
    MultiplierFamily out;
    out.alpha = alpha;
    out.exact = true;
    for (const auto& [V, v] : levels.at(alpha - 1).entries()) {
        SubsetId Vp;
        for (int k = 1; k <= K && V.size() + Vp.size() < alpha; ++k)
            if (!V.contains(k)) Vp = Vp.with(k);
        out.add(map_subset(V, order), map_subset(Vp, order), v);
    }
    return out;
}

FamilyReport verify_family(const SymMultiplierFamily& c, const WeightVector& w, const SymMultiplierFamily* prev) {
    FamilyReport rep;
    const int K = static_cast<int>(w.size());
    const int a = c.alpha;
    const std::string at = "level " + std::to_string(a) + ": ";
    const WeightClass wc = weight_class(w, a);
    if (c.l != wc.l || c.lambda != wc.lambda) {
        rep.prefix_ok = false;
        rep.problems.push_back(at + "(l, lambda) = (" + std::to_string(c.l) + ", " + to_string(c.lambda) +
                               ") but the weight class gives (" + std::to_string(wc.l) + ", " + to_string(wc.lambda) + ")");
    }
    if (static_cast<int>(c.prefix.size()) != wc.l) {
        rep.prefix_ok = false;
        rep.problems.push_back(at + "prefix length " + std::to_string(c.prefix.size()));
    } else {
        for (int k = 1; k <= wc.l; ++k) {
            const Rational want = k < wc.l ? Rational(w[k - 1] - w[k]) : Rational(w[k - 1] - wc.lambda);
            if (c.prefix[k - 1] != want) {
                rep.prefix_ok = false;
                rep.problems.push_back(at + "c_[1:" + std::to_string(k) + "] = " + to_string(c.prefix[k - 1]) +
                                       " != " + to_string(want));
            }
        }
    }
    const SubsetId head = prefix_set(wc.l);
    Rational omega_sum(0);
    for (const auto& [V, v] : c.top) {
        if (sgn(v) == 0) continue;
        if (V.size() != a || !head.subset_of(V) || !V.within(K)) {
            rep.support_ok = false;
            rep.problems.push_back(at + "nonzero entry outside Omega at " + V.to_string());
        }
        omega_sum += v;
    }
    if (omega_sum != wc.lambda) {
        rep.partial_sum_ok = false;
        rep.problems.push_back(at + "sum over Omega " + to_string(omega_sum) + " != lambda " + to_string(wc.lambda));
    }
    std::vector<Rational> sums(K, Rational(0));
    Rational total(0);
    for (const auto& [V, v] : c.entries()) {
        if (sgn(v) < 0) {
            rep.nonneg_ok = false;
            rep.problems.push_back(at + "negative c at " + V.to_string());
        }
        for (int k : V.elements())
            if (k <= K) sums[k - 1] += v;
        total += v;
    }
    for (int k = 1; k <= K; ++k)
        if (sums[k - 1] != w[k - 1]) {
            rep.weights_ok = false;
            rep.problems.push_back(at + "sum over V containing " + std::to_string(k) + " is " + to_string(sums[k - 1]) +
                                   " != " + to_string(w[k - 1]));
        }
    Rational want_total(0);
    if (wc.l == 0) {
        for (const Rational& v : w) want_total += v;
        want_total /= a;
    } else {
        want_total = w[0];
    }
    if (total != want_total) {
        rep.full_sum_ok = false;
        rep.problems.push_back(at + "total " + to_string(total) + " != " + to_string(want_total));
    }
    if (a >= 2 && rep.prefix_ok) {
        rep.theta = compute_theta(c, w);
        if (sgn(*rep.theta) < 0) {
            rep.theta_ok = false;
            rep.problems.push_back(at + "theta " + to_string(*rep.theta) + " < 0");
        }
        if (prev) {
            if (prev->alpha != a - 1) throw std::invalid_argument("verify_family: prev is not the level below");
            const int lp = weight_class(w, a - 1).l;
            const Rational diff = prefix_value(c, w, lp) - prefix_value(*prev, w, lp);
            if (diff != *rep.theta) {
                rep.theta_ok = false;
                rep.problems.push_back(at + "c_[1:l'] difference " + to_string(diff) + " != theta " +
                                       to_string(*rep.theta));
            }
        }
    }
    return rep;
}

std::vector<FamilyReport> verify_chain_families(const SymChain& chain) {
    std::vector<FamilyReport> out;
    for (int a = 1; a <= chain.K; ++a)
        out.push_back(verify_family(chain.levels[a - 1], chain.sorted_w, a >= 2 ? &chain.levels[a - 2] : nullptr));
    return out;
}

SymChainReport verify_sym_chain_inequality(const SymChain& chain) {
    std::vector<prover::EntropyFunctional> fs;
    for (int a = 1; a <= chain.K; ++a) fs.push_back(chain.functional(a));
    SymChainReport rep;
    if (fs.size() >= 2) rep.steps = prover::verify_functional_chain(fs);
    return rep;
}

SymMultiplierFamily canonical_member(const WeightVector& w, int alpha) {
    require_sorted(w, "canonical_member");
    const int K = static_cast<int>(w.size());
    const WeightClass wc = weight_class(w, alpha);
    const SubsetId head = prefix_set(wc.l);
    std::vector<SubsetId> omega;
    for (SubsetId V : subsets_of_size(K, alpha))
        if (head.subset_of(V)) omega.push_back(V);
    std::sort(omega.begin(), omega.end());
    const int n = static_cast<int>(omega.size());

    simplex::Problem<Rational> prob;
    prob.num_vars = n;
    for (int k = wc.l + 1; k <= K; ++k) {
        std::vector<Rational> row(n, Rational(0));
        for (int i = 0; i < n; ++i)
            if (omega[i].contains(k)) row[i] = 1;
        prob.add_row(std::move(row), simplex::Sense::Eq, w[k - 1]);
    }
    std::vector<Rational> value(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        prob.cost.assign(n, Rational(0));
        prob.cost[i] = 1;
        const auto res = simplex::solve(prob);
        if (res.status != simplex::Status::Optimal)
            throw NoCanonicalMember("canonical_member: feasibility LP has no solution at alpha=" + std::to_string(alpha));
        value[i] = res.x[i];
        std::vector<Rational> fix(n, Rational(0));
        fix[i] = 1;
        prob.add_row(std::move(fix), simplex::Sense::Eq, value[i]);
    }
    std::map<SubsetId, Rational> c;
    for (int k = 1; k < wc.l; ++k) c[prefix_set(k)] = w[k - 1] - w[k];
    if (wc.l >= 1) c[prefix_set(wc.l)] = w[wc.l - 1] - wc.lambda;
    for (int i = 0; i < n; ++i) c[omega[i]] += value[i];
    SymMultiplierFamily out = family_from_map(c, w, alpha);
    const FamilyReport rep = verify_family(out, w);
    if (!rep.pass()) throw NoCanonicalMember("canonical_member: LP solution fails membership: " + rep.problems.front());
    return out;
}

}  // namespace dmldc::sym
