#include "dmldc/k3.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dmldc::k3 {

int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 1 && j == 2) return 0;
    if (i == 1 && j == 3) return 1;
    if (i == 2 && j == 3) return 2;
    throw std::domain_error("pair_index: need two distinct labels in [1:3]");
}

namespace {

constexpr std::array<std::pair<int, int>, 3> kPairs{{{1, 2}, {1, 3}, {2, 3}}};

int third(int i, int j) { return 6 - i - j; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

PsiProfile compute_psi(const EntropyProfile& profile, int alpha, double tol) {
    if (profile.K() != 3) throw std::domain_error("compute_psi requires K = 3");
    PsiProfile psi;
    for (int k = 1; k <= 3; ++k) {
        double best = -1.0;
        for (int nu = 1; nu <= 3; ++nu)
            if (nu != k) best = std::max(best, cond_entropy(profile, alpha, SubsetId::of({k}), SubsetId::of({nu})));
        psi.single[k - 1] = best;
        for (int nu = 1; nu <= 3; ++nu)
            if (nu != k && cond_entropy(profile, alpha, SubsetId::of({k}), SubsetId::of({nu})) >= best - tol)
                psi.maximizers[k - 1].push_back(nu);
    }
    for (auto [i, j] : kPairs) {
        const double h = profile.H(alpha, SubsetId::of({i, j}));
        psi.pair_entropy[pair_index(i, j)] = h;
        psi.pair[pair_index(i, j)] = std::max(h - psi.psi(i) - psi.psi(j), 0.0);
    }
    return psi;
}

PsiProfile make_psi(std::array<double, 3> single, std::array<double, 3> pair_entropy) {
    PsiProfile psi;
    psi.single = single;
    psi.pair_entropy = pair_entropy;
    for (int k = 1; k <= 3; ++k) psi.maximizers[k - 1] = {k == 1 ? 2 : 1};
    for (auto [i, j] : kPairs)
        psi.pair[pair_index(i, j)] = std::max(pair_entropy[pair_index(i, j)] - psi.psi(i) - psi.psi(j), 0.0);
    return psi;
}

const std::vector<std::string>& feasible_labels() {
    static const std::vector<std::string> labels{"1A", "1B", "1C", "1D", "2A", "2B", "2C", "3A", "3B",
                                                 "3D", "4A", "4C", "4D", "5A", "5B", "5C", "5D"};
    return labels;
}

const std::vector<std::string>& void_labels() {
    static const std::vector<std::string> labels{"2D", "3C", "4B"};
    return labels;
}

CaseLabel parse_label(const std::string& label) {
    if (label.size() != 2 || label[0] < '1' || label[0] > '5' || label[1] < 'A' || label[1] > 'D')
        throw std::invalid_argument("malformed case label '" + label + "'");
    CaseLabel c{label[0] - '0', label[1], false};
    const auto& v = void_labels();
    c.is_void = std::find(v.begin(), v.end(), label) != v.end();
    return c;
}

VoidCaseError::VoidCaseError(CaseLabel l, const std::string& witness)
    : std::domain_error("void case " + l.label() + ": " + witness), label(l) {}

char classify_psi_case(const PsiProfile& psi, double tol) {
    std::vector<int> failing;
    for (auto [i, j] : kPairs)
        if (psi.pair_entropy[pair_index(i, j)] < psi.psi(i) + psi.psi(j) - tol) failing.push_back(pair_index(i, j));
    if (failing.empty()) return 'A';
    if (failing.size() > 1)
        throw std::domain_error("psi profile has " + std::to_string(failing.size()) +
                                " pairs with H(U_i,U_j) < psi_i + psi_j; at most one is possible");
    switch (failing.front()) {
        case 2: return 'B';
        case 1: return 'C';
        default: return 'D';
    }
}

int classify_w_case(const PsiProfile& psi, const WeightVector& w, double tol) {
    if (w.size() != 3) throw std::domain_error("classify_case requires three weights");
    if (!is_sorted_desc(w)) throw std::domain_error("classify_case: weights must be sorted nonincreasing");
    const double p12 = psi.pair[0], p13 = psi.pair[1], p23 = psi.pair[2];
    if (w[0] > w[1] + w[2]) return p23 > p12 + p13 + tol ? 4 : 5;
    if (p12 > p13 + p23 + tol) return 2;
    if (p13 > p12 + p23 + tol) return 3;
    if (p23 > p12 + p13 + tol) return 4;
    return 1;
}

CaseLabel classify_case(const PsiProfile& psi, const WeightVector& w, double tol) {
    CaseLabel c{classify_w_case(psi, w, tol), classify_psi_case(psi, tol), false};
    const std::string l = c.label();
    if (l == "2D" || l == "3C" || l == "4B") {
        c.is_void = true;
        int i = 1, j = 2;
        if (l == "3C") j = 3;
        if (l == "4B") i = 2, j = 3;
        const int k = third(i, j);
        std::ostringstream os;
        os.precision(17);
        os << "psi_" << i << j << " = " << psi.psi_pair(i, j) << " exceeds psi_" << std::min(i, k) << std::max(i, k)
           << " + psi_" << std::min(j, k) << std::max(j, k) << " = " << psi.psi_pair(i, k) + psi.psi_pair(j, k)
           << " while psi_" << i << " + psi_" << i << j << " + psi_" << j << " = " << psi.pair_sum(i, j)
           << " differs from H(U_" << i << ",U_" << j << ") = " << psi.pair_entropy[pair_index(i, j)];
        throw VoidCaseError(c, os.str());
    }
    return c;
}

std::string LinearForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Rational& a, const char* name) {
        if (sgn(a) == 0) return;
        if (!first) os << (sgn(a) > 0 ? " + " : " - ");
        else if (sgn(a) < 0) os << "-";
        const Rational mag = abs(a);
        if (mag != 1) os << dmldc::to_string(mag) << "*";
        os << name;
        first = false;
    };
    term(a1, "w1");
    term(a2, "w2");
    term(a3, "w3");
    if (first) os << "0";
    return os.str();
}

const MultiplierTable& canonical_table() {
    static const MultiplierTable table = [] {
        const Rational h(1, 2);
        const LinearForm Z{0, 0, 0};
        const LinearForm P{1, 1, -1}, Q{1, -1, 1}, R{-1, 1, 1};
        const LinearForm hP{h, h, -h}, hQ{h, -h, h}, hR{-h, h, h};
        const LinearForm W1{1, 0, 0}, W2{0, 1, 0}, W3{0, 0, 1};
        const LinearForm W1m2{1, -1, 0}, W1m3{1, 0, -1}, W2m3{0, 1, -1}, W1m2m3{1, -1, -1};
        MultiplierTable t;
        t["1A"] = {Z, Z, Z, hP, hQ, hR};
        t["1B"] = {Z, hR, hR, hP, hQ, Z};
        t["1C"] = {hQ, Z, hQ, hP, Z, hR};
        t["1D"] = {hP, hP, Z, Z, hQ, hR};
        t["2A"] = {Z, Z, R, W2, W1m2, Z};
        t["2B"] = {Z, Z, R, W2, W1m2, Z};
        t["2C"] = {W1m2, Z, W3, W2, Z, Z};
        t["3A"] = {Z, R, Z, W1m3, W3, Z};
        t["3B"] = {Z, R, Z, W1m3, W3, Z};
        t["3D"] = {W1m3, W2, Z, Z, W3, Z};
        t["4A"] = {Q, Z, Z, W2m3, Z, W3};
        t["4C"] = {Q, Z, Z, W2m3, Z, W3};
        t["4D"] = {W1, W2m3, Z, Z, Z, W3};
        t["5A"] = {W1m2m3, Z, Z, W2, W3, Z};
        // 5B and 5C carry the 5A and 2C patterns respectively; see the README note.
        t["5B"] = {W1m2m3, Z, Z, W2, W3, Z};
        t["5C"] = {W1m2, Z, W3, W2, Z, Z};
        t["5D"] = {W1m3, W2, Z, Z, W3, Z};
        return t;
    }();
    return table;
}

std::array<int, 3> forced_nu(char psi_case) {
    switch (psi_case) {
        case 'B': return {0, 1, 1};
        case 'C': return {2, 0, 2};
        case 'D': return {3, 3, 0};
        default: return {0, 0, 0};
    }
}

MultiplierFamily table_multipliers(const std::string& label, const WeightVector& w, const std::array<int, 3>& nu,
                                   const MultiplierTable& table) {
    const auto it = table.find(label);
    if (it == table.end()) throw std::domain_error("no multiplier row for case " + label);
    MultiplierFamily c;
    c.alpha = 2;
    const MultiplierRow& row = it->second;
    for (int k = 1; k <= 3; ++k) {
        const Rational v = row[k - 1].eval(w);
        if (sgn(v) == 0) continue;
        if (nu[k - 1] < 1 || nu[k - 1] > 3 || nu[k - 1] == k)
            throw std::domain_error("case " + label + ": nu_" + std::to_string(k) + " is not a valid index");
        c.add(SubsetId::of({k}), SubsetId::of({nu[k - 1]}), v);
    }
    for (auto [i, j] : kPairs) {
        const Rational v = row[3 + pair_index(i, j)].eval(w);
        if (sgn(v) != 0) c.add(SubsetId::of({i, j}), SubsetId(), v);
    }
    return c;
}

std::array<double, 3> table_primal(int w_case, const PsiProfile& psi) {
    const double p1 = psi.single[0], p2 = psi.single[1], p3 = psi.single[2];
    const double p12 = psi.pair[0], p13 = psi.pair[1], p23 = psi.pair[2];
    switch (w_case) {
        case 1:
            return {p1 + 0.5 * (p12 + p13 - p23), p2 + 0.5 * (p12 - p13 + p23), p3 + 0.5 * (-p12 + p13 + p23)};
        case 2: return {p1 + p13, p2 + p12 - p13, p3};
        case 3: return {p1 + p12, p2, p3 + p13 - p12};
        case 4: return {p1, p2 + p12, p3 + p23 - p12};
        case 5: return {p1, p2 + p12, p3 + p13};
        default: throw std::domain_error("w_case outside [1:5]");
    }
}

EntropyProfile relabel(const EntropyProfile& profile, const std::vector<int>& order) {
    EntropyProfile out(profile.K(), profile.origin());
    for (int a = 1; a <= profile.K(); ++a)
        for (std::uint32_t m = 1; m < (1u << profile.K()); ++m)
            out.set(a, SubsetId(m), profile.H(a, map_subset(SubsetId(m), order)));
    return out;
}

K3Solution solve_lp32(const WeightVector& w, const EntropyProfile& profile, const MultiplierTable& table, double tol) {
    if (profile.K() != 3) throw std::domain_error("solve_lp32 requires K = 3");
    validate_weights(w);
    if (w.size() != 3) throw std::invalid_argument("solve_lp32 requires three weights");
    K3Solution out;
    out.order = descending_order(w);
    WeightVector ws(3);
    for (int i = 0; i < 3; ++i) ws[i] = w[out.order[i] - 1];
    const EntropyProfile sorted = relabel(profile, out.order);
    out.psi = compute_psi(sorted, 2, tol);
    out.label = classify_case(out.psi, ws, tol);
    const std::array<int, 3> forced = forced_nu(out.label.psi_case);
    for (int k = 1; k <= 3; ++k) out.nu[k - 1] = forced[k - 1] != 0 ? forced[k - 1] : out.psi.default_nu(k);

    const std::array<double, 3> r = table_primal(out.label.w_case, out.psi);
    const MultiplierFamily dual = table_multipliers(out.label.label(), ws, out.nu, table);

    LPSolution& sol = out.solution;
    sol.status = LPStatus::Optimal;
    sol.primal.rates.assign(3, 0.0);
    for (int i = 0; i < 3; ++i) {
        sol.primal.rates[out.order[i] - 1] = r[i];
        sol.value += ws[i].get_d() * r[i];
    }
    sol.dual.alpha = 2;
    for (const auto& [key, v] : dual.entries)
        sol.dual.add(map_subset(key.V, out.order), map_subset(key.Vp, out.order), v);
    return out;
}

LayerRegion psi_region(const PsiProfile& psi) {
    std::vector<Halfspace> hs;
    for (int k = 1; k <= 3; ++k) {
        std::vector<int> c(3, 0);
        c[k - 1] = 1;
        hs.push_back({SubsetId::of({k}), SubsetId(), c, psi.psi(k)});
    }
    for (auto [i, j] : kPairs) {
        std::vector<int> c(3, 0);
        c[i - 1] = c[j - 1] = 1;
        hs.push_back({SubsetId::of({i, j}), SubsetId(), c, psi.pair_sum(i, j)});
    }
    return make_region(3, 2, std::move(hs));
}

RegionEqualityReport check_region_equality(const EntropyProfile& profile, double tol, double vertex_tol) {
    if (profile.K() != 3) throw std::domain_error("check_region_equality requires K = 3");
    RegionEqualityReport rep;
    const PsiProfile psi = compute_psi(profile, 2, tol);
    rep.vertices = enumerate_vertices(build_layer_region(profile, 2), vertex_tol);
    rep.psi_vertices = enumerate_vertices(psi_region(psi), vertex_tol);
    rep.vertices_equal = same_vertex_sets(rep.vertices, rep.psi_vertices, vertex_tol);

    auto H2 = [&](std::initializer_list<int> v) { return profile.H(2, SubsetId::of(v)); };
    auto Hc = [&](int a, int b) { return cond_entropy(profile, 2, SubsetId::of({a}), SubsetId::of({b})); };
    auto close = [tol](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };

    for (auto [i, j] : kPairs) {
        const int k = third(i, j);
        const double s = psi.pair_sum(i, j);
        const double hij = H2({i, j});
        const double cond = Hc(i, k) + Hc(j, k);
        const std::string p = std::to_string(i) + std::to_string(j);
        // Dichotomy.
        if (hij >= psi.psi(i) + psi.psi(j) - tol) {
            if (!close(s, hij)) rep.violations.push_back("dichotomy: pair " + p + " sum " + fmt(s) + " != H = " + fmt(hij));
        } else if (!close(s, cond)) {
            rep.violations.push_back("dichotomy: pair " + p + " sum " + fmt(s) + " != conditional form " + fmt(cond));
        }
        // Strict triangle excess forces the entropic branch.
        if (psi.psi_pair(i, j) > psi.psi_pair(i, k) + psi.psi_pair(j, k) + tol && !close(s, hij))
            rep.violations.push_back("triangle: psi_" + p + " dominant but pair sum " + fmt(s) + " != H = " + fmt(hij));
        // Conditional branch forces the other two pairs to be entropic.
        if (close(s, cond)) {
            for (int a : {i, j}) {
                const double sa = psi.pair_sum(a, k);
                const double ha = H2({a, k});
                if (!close(sa, ha))
                    rep.violations.push_back("implication: pair " + p + " conditional but pair " +
                                             std::to_string(std::min(a, k)) + std::to_string(std::max(a, k)) +
                                             " sum " + fmt(sa) + " != H = " + fmt(ha));
            }
        }
    }
    return rep;
}

}  // namespace dmldc::k3
