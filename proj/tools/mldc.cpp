// mldc: command-line front end. Results go to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 a verification failed, 2 bad input.

#include "dmldc/acceptance.hpp"
#include "dmldc/io.hpp"
#include "dmldc/k3.hpp"
#include "dmldc/lp.hpp"
#include "dmldc/prover.hpp"
#include "dmldc/region.hpp"
#include "dmldc/symmetric.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

using namespace dmldc;
using io::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Global {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string format = "json";
};

struct ProfileArgs {
    std::string source;
    std::string profile;
    bool bypass = false;

    void attach(CLI::App* cmd) {
        auto* s = cmd->add_option("--source", source, "layered source JSON");
        auto* p = cmd->add_option("--profile", profile, "abstract entropy profile JSON");
        s->excludes(p);
        cmd->add_flag("--bypass", bypass, "accept a non-polymatroidal profile");
    }
    EntropyProfile load() const {
        if (!source.empty()) return build_profile(io::source_from_json(io::read_json_file(source)));
        if (!profile.empty()) return io::profile_from_json(io::read_json_file(profile), bypass);
        throw io::InputError("one of --source or --profile is required");
    }
};

void render_text(const json& j, const std::string& path, std::ostream& os) {
    if (j.is_object()) {
        if (j.empty()) os << path << ": {}\n";
        for (const auto& [k, v] : j.items()) render_text(v, path.empty() ? k : path + "." + k, os);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Global& g, const json& j) {
    if (g.format == "text") render_text(j, "", std::cout);
    else std::cout << j.dump(2) << "\n";
}

json report_to_json(const MultiplierReport& r) {
    return {{"pass", r.pass()},         {"keys_ok", r.keys_ok},     {"value_ok", r.value_ok},
            {"weights_ok", r.weights_ok}, {"nonneg_ok", r.nonneg_ok}, {"lhs_value", r.lhs_value},
            {"problems", r.problems}};
}

json vertices_to_json(const std::vector<RatePoint>& vs) {
    json a = json::array();
    for (const RatePoint& v : vs) a.push_back(io::rate_point_to_json(v));
    return a;
}

json family_report_to_json(const sym::FamilyReport& r) {
    json j{{"pass", r.pass()}};
    if (r.theta) j["theta"] = to_string(*r.theta);
    j["problems"] = r.problems;
    return j;
}

json chain_step_to_json(const prover::ChainStep& s) {
    return {{"from_alpha", s.from_alpha},
            {"to_alpha", s.to_alpha},
            {"replayed", s.replayed},
            {"certificate", io::certificate_to_json(s.certificate)}};
}

/// Copies f into N >= f.K variables.
prover::EntropyFunctional lift(const prover::EntropyFunctional& f, int N) {
    if (N < f.K) throw io::InputError("--k " + std::to_string(N) + " is smaller than the functional's K = " + std::to_string(f.K));
    if (N > kMaxK) throw io::InputError("--k must not exceed " + std::to_string(kMaxK));
    prover::EntropyFunctional out(N);
    for (std::size_t m = 1; m < f.coeffs.size(); ++m) out.add(SubsetId(static_cast<std::uint32_t>(m)), f.coeffs[m]);
    return out;
}

void require_sorted(const WeightVector& w) {
    if (!is_sorted_desc(w)) throw io::InputError("weights: symmetric commands expect nonincreasing w");
}

// ---- commands ---------------------------------------------------------------

int cmd_entropy(const Global& g, const ProfileArgs& in) {
    emit(g, io::profile_to_json(in.load()));
    return 0;
}

int cmd_region(const Global& g, const ProfileArgs& in) {
    emit(g, io::region_to_json(in.load()));
    return 0;
}

int cmd_lp_solve(const Global& g, const ProfileArgs& in, int alpha, const std::string& wtext, bool exact) {
    const EntropyProfile prof = in.load();
    const WeightVector w = io::parse_weights(wtext);
    if (static_cast<int>(w.size()) != prof.K()) throw io::InputError("weights: expected " + std::to_string(prof.K()) + " entries");
    SolveMode mode;
    mode.exact = exact;
    const LPSolution sol = solve_simplex(make_instance(prof, alpha, w), mode);
    json j = io::solution_to_json(sol);
    bool ok = true;
    if (sol.status == LPStatus::Optimal) {
        const MultiplierReport rep = verify_multiplier(sol.dual, w, prof, alpha, sol.value);
        j["verification"] = report_to_json(rep);
        ok = rep.pass();
    }
    emit(g, j);
    return ok ? 0 : kExitFail;
}

int cmd_lp_verify(const Global& g, const ProfileArgs& in, const std::string& mfile, const std::string& wtext,
                  std::optional<double> value) {
    const EntropyProfile prof = in.load();
    const WeightVector w = io::parse_weights(wtext);
    const MultiplierFamily c = io::multipliers_from_json(io::read_json_file(mfile));
    if (c.alpha < 1 || c.alpha > prof.K()) throw io::InputError("multipliers.alpha: out of range");
    const double claimed = value ? *value : solve_simplex(make_instance(prof, c.alpha, w)).value;
    const MultiplierReport rep = verify_multiplier(c, w, prof, c.alpha, claimed);
    json j{{"alpha", c.alpha}, {"claimed_value", claimed}, {"verification", report_to_json(rep)}};
    emit(g, j);
    if (!rep.pass()) std::cerr << "mldc: multiplier verification failed: " << rep.problems.front() << "\n";
    return rep.pass() ? 0 : kExitFail;
}

int cmd_k3_solve(const Global& g, const ProfileArgs& in, const std::string& wtext) {
    const EntropyProfile prof = in.load();
    const WeightVector w = io::parse_weights(wtext);
    if (prof.K() != 3 || w.size() != 3) throw io::InputError("k3 solve needs K = 3 and three weights");
    const k3::K3Solution sol = k3::solve_lp32(w, prof);
    const LPSolution ref = solve_simplex(make_instance(prof, 2, w));
    const MultiplierReport rep = verify_multiplier(sol.solution.dual, w, prof, 2, sol.solution.value);
    const bool agree = std::abs(ref.value - sol.solution.value) <= 1e-8;
    json j;
    j["case"] = sol.label.label();
    j["nu"] = sol.nu;
    j["primal"] = io::rate_point_to_json(sol.solution.primal);
    j["value"] = sol.solution.value;
    j["dual"] = io::multipliers_to_json(sol.solution.dual);
    j["verification"] = report_to_json(rep);
    j["verification"]["simplex_value"] = ref.value;
    j["verification"]["simplex_agrees"] = agree;
    emit(g, j);
    return rep.pass() && agree ? 0 : kExitFail;
}

int cmd_k3_check(const Global& g, const ProfileArgs& in) {
    const EntropyProfile prof = in.load();
    if (prof.K() != 3) throw io::InputError("k3 check needs K = 3");
    const k3::RegionEqualityReport rep = k3::check_region_equality(prof);
    const k3::PsiProfile psi = k3::compute_psi(prof);
    json j{{"pass", rep.pass()},
           {"psi", psi.single},
           {"psi_pair", psi.pair},
           {"vertices_equal", rep.vertices_equal},
           {"vertices", vertices_to_json(rep.vertices)},
           {"psi_vertices", vertices_to_json(rep.psi_vertices)},
           {"violations", rep.violations}};
    emit(g, j);
    return rep.pass() ? 0 : kExitFail;
}

int cmd_prove(const Global& g, const std::string& file, bool symmetrize, std::optional<int> k) {
    prover::EntropyFunctional f = io::functional_from_json(io::read_json_file(file));
    if (k) f = lift(f, *k);
    const prover::InequalityCertificate cert = prover::prove_nonneg(f, symmetrize);
    const bool replayed = prover::replay(cert);
    json j = io::certificate_to_json(cert);
    j["replayed"] = replayed;
    emit(g, j);
    if (!replayed) std::cerr << "mldc: certificate failed exact replay\n";
    return replayed ? 0 : kExitFail;
}

int cmd_sym_chain(const Global& g, const std::string& wtext, int K, const std::string& hfile, int prove_max_k) {
    const WeightVector w = io::parse_weights(wtext);
    if (static_cast<int>(w.size()) != K) throw io::InputError("weights: expected " + std::to_string(K) + " entries");
    const sym::SymChain chain = sym::build_chain(w, K);
    const std::vector<sym::FamilyReport> reps = sym::verify_chain_families(chain);
    std::optional<SymmetricProfile> H;
    if (!hfile.empty()) {
        H = io::symmetric_from_json(io::read_json_file(hfile));
        if (H->K != K) throw io::InputError("symmetric profile: K differs from --K");
    }
    bool ok = true;
    json levels = json::array();
    for (int a = K; a >= 1; --a) {
        const sym::ThetaRecord& th = chain.thetas[a - 1];
        json lv{{"alpha", a}, {"l", th.l}, {"lambda", to_string(th.lambda)}};
        if (th.theta) lv["theta"] = to_string(*th.theta);
        lv["multipliers"] = io::multipliers_to_json(chain.multipliers(a));
        lv["check"] = family_report_to_json(reps[a - 1]);
        ok = ok && reps[a - 1].pass();
        if (H) {
            const double value = sym::closed_form_sym(chain.sorted_w, *H, a).value;
            const sym::FeasibilityReport fr = sym::feasibility_check_rl(*H, a, th.l);
            lv["closed_form_value"] = value;
            lv["feasibility"] = {{"pass", fr.pass()}, {"violations", fr.violations}};
            ok = ok && fr.pass();
        }
        levels.push_back(lv);
    }
    json j{{"K", K}, {"w", io::weights_to_json(chain.w)}, {"levels", levels}};
    if (K <= prove_max_k) {
        const sym::SymChainReport cr = sym::verify_sym_chain_inequality(chain);
        json steps = json::array();
        for (const prover::ChainStep& s : cr.steps.steps) steps.push_back(chain_step_to_json(s));
        j["certificates"] = steps;
        ok = ok && cr.pass();
    } else {
        const auto samples = prover::sample_entropy_vectors(K, 10000, g.seed);
        json spots = json::array();
        for (int a = 1; a < K; ++a) {
            const double m = prover::min_over_samples(chain.functional(a) - chain.functional(a + 1), samples);
            spots.push_back({{"from_alpha", a}, {"to_alpha", a + 1}, {"min", m}, {"pass", m >= -1e-9}});
            ok = ok && m >= -1e-9;
        }
        j["spotcheck"] = {{"seed", g.seed}, {"trials", 10000}, {"steps", spots}};
    }
    j["pass"] = ok;
    emit(g, j);
    if (!ok) std::cerr << "mldc: symmetric chain verification failed\n";
    return ok ? 0 : kExitFail;
}

int cmd_sym_solve(const Global& g, const std::string& wtext, int alpha, const std::string& hfile, bool canonical) {
    const WeightVector w = io::parse_weights(wtext);
    require_sorted(w);
    const SymmetricProfile H = io::symmetric_from_json(io::read_json_file(hfile));
    if (static_cast<int>(w.size()) != H.K) throw io::InputError("weights: expected " + std::to_string(H.K) + " entries");
    if (alpha < 1 || alpha > H.K) throw io::InputError("--alpha out of range");
    const WeightClass wc = weight_class(w, alpha);
    const sym::FeasibilityReport fr = sym::feasibility_check_rl(H, alpha, wc.l);
    const LPSolution sol = sym::closed_form_sym(w, H, alpha);
    const MultiplierReport rep = verify_multiplier(sol.dual, w, expand_symmetric(H), alpha, sol.value);
    json j = io::solution_to_json(sol);
    j["l"] = wc.l;
    j["lambda"] = to_string(wc.lambda);
    j["feasibility"] = {{"pass", fr.pass()}, {"violations", fr.violations}};
    j["verification"] = report_to_json(rep);
    if (canonical) {
        try {
            const sym::SymMultiplierFamily c = sym::canonical_member(w, alpha);
            json m = json::object();
            for (const auto& [V, v] : c.entries()) m[V.to_string()] = to_string(v);
            j["canonical_member"] = m;
        } catch (const sym::NoCanonicalMember& e) {
            std::cerr << "mldc: " << e.what() << "\n";
            emit(g, j);
            return kExitFail;
        }
    }
    emit(g, j);
    return fr.pass() && rep.pass() ? 0 : kExitFail;
}

int cmd_selftest(const Global& g, bool quick, const std::vector<int>& ids, const std::string& mutate) {
    acceptance::Options opt;
    opt.seed = g.seed;
    opt.quick = quick;
    opt.jobs = g.jobs;
    std::optional<k3::MultiplierTable> mutant;
    if (!mutate.empty()) {
        // LABEL:COL:COEF, e.g. 2C:4:1
        const auto a = mutate.find(':'), b = mutate.rfind(':');
        if (a == std::string::npos || a == b) throw io::InputError("--mutate expects LABEL:COL:COEF");
        try {
            mutant = acceptance::mutate_table(k3::canonical_table(), mutate.substr(0, a), std::stoi(mutate.substr(a + 1, b - a - 1)),
                                              std::stoi(mutate.substr(b + 1)));
        } catch (const std::logic_error& e) {
            throw io::InputError(std::string("--mutate: ") + e.what());
        }
        opt.table = &*mutant;
    }
    const std::vector<acceptance::CriterionResult> results = acceptance::run(opt, ids);
    bool ok = true;
    json arr = json::array();
    for (const auto& r : results) {
        ok = ok && r.pass;
        if (g.format == "text") std::cout << acceptance::format_line(r) << "\n";
        // Timings are left out of json so the bytes stay stable.
        arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    if (g.format != "text") std::cout << json{{"seed", g.seed}, {"quick", quick}, {"mutation", mutate}, {"pass", ok}, {"criteria", arr}}.dump(2) << "\n";
    for (const auto& r : results)
        if (!r.pass) {
            std::cerr << "mldc: criterion " << r.id << " (" << r.name << ") failed: " << r.detail << "\n";
            break;
        }
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate regions and certificates for distributed multilevel diversity coding"};
    app.require_subcommand(1);
    // Global options may follow the subcommand.
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "seed for randomized checks")->envname("MLDC_SEED");
    app.add_option("--jobs", g.jobs, "worker threads for batch checks")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));

    ProfileArgs in;
    int alpha = 0, K = 0, prove_max_k = 5;
    std::string wtext, mfile, ffile, hfile, mutate;
    std::optional<double> value;
    std::optional<int> lift_k;
    bool exact = false, symmetrize = false, quick = false, canonical = false;
    std::vector<int> ids;

    auto* entropy = app.add_subcommand("entropy", "subset entropies of every layer");
    in.attach(entropy);
    auto* region = app.add_subcommand("region", "per-layer halfspace dump");
    in.attach(region);

    auto* lp = app.add_subcommand("lp", "supporting-hyperplane LP");
    lp->require_subcommand(1);
    auto* lp_solve = lp->add_subcommand("solve", "generic simplex with verified dual");
    in.attach(lp_solve);
    lp_solve->add_option("--alpha", alpha, "layer")->required();
    lp_solve->add_option("--w", wtext, "weights, e.g. 3,1,1 or 1/2,1/3")->required();
    lp_solve->add_flag("--exact", exact, "exact rational pivoting");
    auto* lp_verify = lp->add_subcommand("verify", "check a multiplier family");
    in.attach(lp_verify);
    lp_verify->add_option("--multipliers", mfile, "multiplier JSON")->required()->check(CLI::ExistingFile);
    lp_verify->add_option("--w", wtext, "weights")->required();
    lp_verify->add_option("--value", value, "claimed optimum (default: simplex value)");

    auto* k3c = app.add_subcommand("k3", "K = 3 closed forms");
    k3c->require_subcommand(1);
    auto* k3_solve = k3c->add_subcommand("solve", "closed-form LP at layer 2");
    in.attach(k3_solve);
    k3_solve->add_option("--w", wtext, "weights")->required();
    auto* k3_check = k3c->add_subcommand("check", "layer-2 region against the psi region");
    in.attach(k3_check);

    auto* prove = app.add_subcommand("prove", "Shannon-type inequality prover");
    prove->add_option("--functional", ffile, "functional JSON")->required()->check(CLI::ExistingFile);
    prove->add_flag("--symmetrize", symmetrize, "average over relabellings first");
    prove->add_option("--k", lift_k, "number of variables (lifts the functional)");

    auto* symc = app.add_subcommand("sym", "symmetric sources");
    symc->require_subcommand(1);
    auto* sym_chain = symc->add_subcommand("chain", "multiplier chain, checks and certificates");
    sym_chain->add_option("--w", wtext, "weights")->required();
    sym_chain->add_option("--K", K, "number of components")->required()->check(CLI::Range(1, kMaxK));
    sym_chain->add_option("--H", hfile, "symmetric profile JSON")->check(CLI::ExistingFile);
    sym_chain->add_option("--prove-max-k", prove_max_k, "largest K proved exactly; above it a numeric spot check runs");
    auto* sym_solve = symc->add_subcommand("solve", "closed-form layer LP for a symmetric profile");
    sym_solve->add_option("--w", wtext, "nonincreasing weights")->required();
    sym_solve->add_option("--alpha", alpha, "layer")->required();
    sym_solve->add_option("--H", hfile, "symmetric profile JSON")->required()->check(CLI::ExistingFile);
    sym_solve->add_flag("--canonical", canonical, "also emit the canonical member of the multiplier family");

    auto* selftest = app.add_subcommand("selftest", "acceptance suite");
    selftest->add_flag("--quick", quick, "reduced sample sizes");
    selftest->add_option("--criteria", ids, "subset of criteria 1..7")->check(CLI::Range(1, 7))->delimiter(',');
    selftest->add_option("--mutate", mutate, "flip one table coefficient, LABEL:COL:COEF");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*entropy) return cmd_entropy(g, in);
        if (*region) return cmd_region(g, in);
        if (*lp_solve) return cmd_lp_solve(g, in, alpha, wtext, exact);
        if (*lp_verify) return cmd_lp_verify(g, in, mfile, wtext, value);
        if (*k3_solve) return cmd_k3_solve(g, in, wtext);
        if (*k3_check) return cmd_k3_check(g, in);
        if (*prove) return cmd_prove(g, ffile, symmetrize, lift_k);
        if (*sym_chain) return cmd_sym_chain(g, wtext, K, hfile, prove_max_k);
        if (*sym_solve) return cmd_sym_solve(g, wtext, alpha, hfile, canonical);
        if (*selftest) return cmd_selftest(g, quick, ids, mutate);
    } catch (const io::InputError& e) {
        std::cerr << "mldc: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mldc: invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "mldc: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitInput;
}
