#include "dmldc/region.hpp"

#include "dmldc/lp.hpp"
#include "dmldc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmldc {

long long layer_constraint_count(int K, int alpha) {
    long long n = 0;
    for (int v = 1; v <= alpha; ++v) n += binomial(K, v) * binomial(K - v, alpha - v);
    return n;
}

std::vector<std::pair<SubsetId, SubsetId>> layer_constraint_pairs(int K, int alpha) {
    if (K < 1 || K > kMaxK) throw std::domain_error("K outside [1:" + std::to_string(kMaxK) + "]");
    if (alpha < 1 || alpha > K) throw std::domain_error("alpha outside [1:K]");
    std::vector<std::pair<SubsetId, SubsetId>> out;
    const SubsetId full = SubsetId::full(K);
    for (int v = 1; v <= alpha; ++v) {
        const auto conds = subsets_of_size(K, alpha - v);
        for (SubsetId V : subsets_of_size(K, v))
            for (SubsetId Vp : conds)
                if (Vp.subset_of(full.minus(V))) out.emplace_back(V, Vp);
    }
    return out;
}

namespace {

std::vector<int> indicator(SubsetId V, int K) {
    std::vector<int> c(K, 0);
    for (int k : V.elements()) c[k - 1] = 1;
    return c;
}

}  // namespace

LayerRegion build_layer_region(const EntropyProfile& profile, int alpha) {
    LayerRegion reg{profile.K(), alpha, {}};
    for (auto [V, Vp] : layer_constraint_pairs(profile.K(), alpha))
        reg.halfspaces.push_back({V, Vp, indicator(V, profile.K()), cond_entropy(profile, alpha, V, Vp)});
    return reg;
}

LayerRegion make_region(int K, int alpha, std::vector<Halfspace> halfspaces) {
    for (const Halfspace& h : halfspaces) {
        if (static_cast<int>(h.coeffs.size()) != K) throw std::invalid_argument("halfspace has wrong dimension");
        if (std::all_of(h.coeffs.begin(), h.coeffs.end(), [](int c) { return c == 0; }))
            throw std::invalid_argument("halfspace coefficients are all zero");
    }
    return {K, alpha, std::move(halfspaces)};
}

bool contains(const LayerRegion& region, const RatePoint& point, double tol) {
    for (const Halfspace& h : region.halfspaces) {
        double lhs = 0.0;
        for (int k = 0; k < region.K; ++k) lhs += h.coeffs[k] * point.rates[k];
        if (lhs < h.rhs - tol) return false;
    }
    return true;
}

MembershipResult region_membership(const EntropyProfile& profile, const RatePoint& point, double tol) {
    const int K = profile.K();
    if (static_cast<int>(point.rates.size()) != K) throw std::invalid_argument("rate point has wrong dimension");
    for (double r : point.rates)
        if (!std::isfinite(r)) throw std::invalid_argument("rate point has a non-finite entry");
    // Variables: r_{k,alpha} at (alpha-1)*K + (k-1), then the slack t.
    const int n = K * K + 1;
    simplex::Problem<double> prob;
    prob.num_vars = n;
    prob.cost.assign(n, 0.0);
    prob.cost[n - 1] = 1.0;
    for (int a = 1; a <= K; ++a) {
        for (auto [V, Vp] : layer_constraint_pairs(K, a)) {
            std::vector<double> row(n, 0.0);
            for (int k : V.elements()) row[(a - 1) * K + (k - 1)] = 1.0;
            prob.add_row(std::move(row), simplex::Sense::Ge, cond_entropy(profile, a, V, Vp));
        }
    }
    for (int k = 1; k <= K; ++k) {
        std::vector<double> row(n, 0.0);
        for (int a = 1; a <= K; ++a) row[(a - 1) * K + (k - 1)] = 1.0;
        row[n - 1] = -1.0;
        prob.add_row(std::move(row), simplex::Sense::Le, point.rates[k - 1]);
    }
    const auto res = simplex::solve(prob);
    if (res.status != simplex::Status::Optimal)
        throw std::runtime_error("region_membership: decomposition LP ended with non-optimal status");
    MembershipResult out;
    out.deficit = res.x[n - 1];
    out.member = out.deficit <= tol;
    if (out.member) {
        out.split.assign(K, std::vector<double>(K, 0.0));
        for (int a = 1; a <= K; ++a)
            for (int k = 1; k <= K; ++k) out.split[a - 1][k - 1] = res.x[(a - 1) * K + (k - 1)];
    }
    return out;
}

namespace {

// Solves the square system A x = b by Gaussian elimination with partial pivoting.
bool solve_square(std::vector<std::vector<double>> A, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-12) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return true;
}

double inf_dist(const RatePoint& a, const RatePoint& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.rates.size(); ++k) d = std::max(d, std::abs(a.rates[k] - b.rates[k]));
    return d;
}

}  // namespace

std::vector<RatePoint> enumerate_vertices(const LayerRegion& region, double tol) {
    const int K = region.K;
    if (K > 4) throw std::domain_error("enumerate_vertices supports K <= 4");
    const int m = static_cast<int>(region.halfspaces.size());
    std::vector<RatePoint> out;
    if (m < K) return out;
    std::vector<int> pick(K);
    for (int i = 0; i < K; ++i) pick[i] = i;
    for (;;) {
        std::vector<std::vector<double>> A(K, std::vector<double>(K));
        std::vector<double> b(K);
        for (int i = 0; i < K; ++i) {
            const Halfspace& h = region.halfspaces[pick[i]];
            for (int k = 0; k < K; ++k) A[i][k] = h.coeffs[k];
            b[i] = h.rhs;
        }
        std::vector<double> x;
        if (solve_square(std::move(A), std::move(b), x)) {
            RatePoint p{std::move(x)};
            if (contains(region, p, 1e-9) &&
                std::none_of(out.begin(), out.end(), [&](const RatePoint& q) { return inf_dist(p, q) <= tol; }))
                out.push_back(std::move(p));
        }
        int i = K - 1;
        while (i >= 0 && pick[i] == m - K + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < K; ++j) pick[j] = pick[j - 1] + 1;
    }
    std::sort(out.begin(), out.end(), [](const RatePoint& a, const RatePoint& b) { return a.rates < b.rates; });
    return out;
}

bool same_vertex_sets(const std::vector<RatePoint>& a, const std::vector<RatePoint>& b, double tol) {
    auto covered = [tol](const std::vector<RatePoint>& xs, const std::vector<RatePoint>& ys) {
        return std::all_of(xs.begin(), xs.end(), [&](const RatePoint& x) {
            return std::any_of(ys.begin(), ys.end(), [&](const RatePoint& y) { return inf_dist(x, y) <= tol; });
        });
    };
    return covered(a, b) && covered(b, a);
}

double support_value(const EntropyProfile& profile, const std::vector<Rational>& w) {
    double total = 0.0;
    for (int a = 1; a <= profile.K(); ++a) {
        const LPSolution sol = solve_simplex(make_instance(profile, a, w));
        if (sol.status != LPStatus::Optimal) throw std::runtime_error("support_value: layer LP not optimal");
        total += sol.value;
    }
    return total;
}

}  // namespace dmldc
