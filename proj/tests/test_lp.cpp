#include "dmldc/lp.hpp"
#include "dmldc/region.hpp"
#include "dmldc/simplex.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace dmldc;
using namespace dmldc::testing;

namespace {

// Brute force: min w.r over vertices of the layer region.
double vertex_min(const EntropyProfile& p, int alpha, const WeightVector& w) {
    double best = std::numeric_limits<double>::infinity();
    for (const RatePoint& v : enumerate_vertices(build_layer_region(p, alpha))) {
        double s = 0;
        for (std::size_t k = 0; k < w.size(); ++k) s += w[k].get_d() * v.rates[k];
        best = std::min(best, s);
    }
    return best;
}

}  // namespace

TEST_SUITE("simplex") {
    TEST_CASE("exact and float agree on a small LP") {
        // min x + y  s.t. x + 2y >= 2, 3x + y >= 3.
        simplex::Problem<Rational> pr;
        pr.num_vars = 2;
        pr.cost = {1, 1};
        pr.add_row({1, 2}, simplex::Sense::Ge, 2);
        pr.add_row({3, 1}, simplex::Sense::Ge, 3);
        const auto r = simplex::solve(pr);
        REQUIRE(r.status == simplex::Status::Optimal);
        CHECK(r.value == Rational(7, 5));
        simplex::Problem<double> pd;
        pd.num_vars = 2;
        pd.cost = {1, 1};
        pd.add_row({1, 2}, simplex::Sense::Ge, 2);
        pd.add_row({3, 1}, simplex::Sense::Ge, 3);
        CHECK(simplex::solve(pd).value == doctest::Approx(1.4));
        // Duals: c = A^T y with y >= 0.
        CHECK(r.y[0] * 1 + r.y[1] * 3 == 1);
        CHECK(r.y[0] * 2 + r.y[1] * 1 == 1);
    }

    TEST_CASE("infeasible and unbounded") {
        simplex::Problem<Rational> pr;
        pr.num_vars = 1;
        pr.cost = {1};
        pr.add_row({1}, simplex::Sense::Le, -1);
        CHECK(simplex::solve(pr).status == simplex::Status::Infeasible);
        simplex::Problem<Rational> pu;
        pu.num_vars = 1;
        pu.cost = {-1};
        pu.add_row({1}, simplex::Sense::Ge, 0);
        CHECK(simplex::solve(pu).status == simplex::Status::Unbounded);
    }
}

TEST_SUITE("lp") {
    TEST_CASE("alpha = 1 has the unique multiplier c_{k|empty} = w_k") {
        Rng rng(9);
        const EntropyProfile p = build_profile(random_source(3, rng));
        const WeightVector w = weights({3, 2, 1});
        const LPSolution s = solve_simplex(make_instance(p, 1, w));
        for (int k = 1; k <= 3; ++k) {
            CHECK(s.primal.rates[k - 1] == doctest::Approx(p.H(1, SubsetId::of({k}))));
            CHECK(s.dual.get(SubsetId::of({k}), SubsetId()).get_d() == doctest::Approx(w[k - 1].get_d()));
        }
    }

    TEST_CASE("i.i.d. bits at alpha 2") {
        const LPSolution s = solve_simplex(make_instance(iid_bits_profile(3), 2, weights({1, 1, 1})));
        CHECK(s.value == doctest::Approx(3.0));
    }

    TEST_CASE("simplex matches brute-force vertex minimum") {
        Rng rng(17);
        for (int t = 0; t < 30; ++t) {
            const EntropyProfile p = build_profile(random_source(3, rng));
            WeightVector w{Rational(static_cast<long>(uniform_int(rng, 0, 9))), Rational(static_cast<long>(uniform_int(rng, 0, 9))),
                           Rational(static_cast<long>(uniform_int(rng, 1, 9)))};
            for (int a = 1; a <= 3; ++a) {
                const LPSolution s = solve_simplex(make_instance(p, a, w));
                CHECK(std::abs(s.value - vertex_min(p, a, w)) <= 1e-8);
                const LPSolution e = solve_simplex(make_instance(p, a, w), SolveMode{true});
                CHECK(std::abs(e.value - s.value) <= 1e-8);
                CHECK(weight_identity_holds(e.dual, w));
                CHECK(verify_multiplier(e.dual, w, p, a, s.value).pass());
            }
        }
    }

    TEST_CASE("verify_multiplier: worked 2C multipliers and failure modes") {
        const EntropyProfile p = duplicated_bit_profile();
        const WeightVector w = weights({3, 2, 1});
        MultiplierFamily c;
        c.alpha = 2;
        c.add(SubsetId::of({1}), SubsetId::of({2}), w[0] - w[1]);
        c.add(SubsetId::of({3}), SubsetId::of({2}), w[2]);
        c.add(SubsetId::of({1, 2}), SubsetId(), w[1]);
        CHECK(weight_identity_holds(c, w));
        const double val = to_double(w[0] - w[1]) * cond_entropy(p, 2, SubsetId::of({1}), SubsetId::of({2})) +
                           w[2].get_d() * cond_entropy(p, 2, SubsetId::of({3}), SubsetId::of({2})) +
                           w[1].get_d() * p.H(2, SubsetId::of({1, 2}));
        CHECK(verify_multiplier(c, w, p, 2, val).pass());
        // A wrong claimed value, a broken weight identity, a negative entry.
        CHECK_FALSE(verify_multiplier(c, w, p, 2, val + 1).value_ok);
        MultiplierFamily bad = c;
        bad.add(SubsetId::of({1, 2}), SubsetId(), Rational(1));
        CHECK_FALSE(verify_multiplier(bad, w, p, 2, val).weights_ok);
        MultiplierFamily neg;
        neg.alpha = 2;
        neg.add(SubsetId::of({1}), SubsetId::of({2}), Rational(-1));
        neg.add(SubsetId::of({1, 2}), SubsetId(), Rational(4));
        neg.add(SubsetId::of({3}), SubsetId::of({1}), Rational(1));
        CHECK_FALSE(verify_multiplier(neg, w, p, 2, 0).nonneg_ok);
        // Key of the wrong level.
        MultiplierFamily key;
        key.alpha = 2;
        key.add(SubsetId::of({1, 2, 3}), SubsetId(), Rational(1));
        CHECK_FALSE(verify_multiplier(key, weights({1, 1, 1}), p, 2, 0).keys_ok);

        MultiplierFamily zero;
        zero.alpha = 2;
        CHECK(verify_multiplier(zero, weights({0, 0, 0}), p, 2, 0.0).pass());
    }

    TEST_CASE("closed forms at alpha = 1 and alpha = K") {
        CHECK(closed_form_alpha1(weights({1, 2, 3}), iid_bits_profile(3)).value == doctest::Approx(6.0));
        LayeredSource one;
        one.K = 1;
        one.layers = {LayerPmf{{2}, {0.25, 0.75}}};
        CHECK(closed_form_alpha1(weights({2}), build_profile(one)).value == doctest::Approx(2 * h2(0.25)));

        const LPSolution ck = closed_form_alphaK(weights({1, 1, 1}), iid_bits_profile(3));
        CHECK(ck.value == doctest::Approx(3.0));
        CHECK(ck.primal.rates == std::vector<double>{1, 1, 1});
        REQUIRE(ck.dual.entries.size() == 1);
        CHECK(ck.dual.get(SubsetId::full(3), SubsetId()) == 1);

        const LPSolution eq = closed_form_alphaK(weights({3, 2, 1}), equal_bits_profile(3));
        CHECK(eq.value == doctest::Approx(1.0));
        CHECK(eq.primal.rates[0] == doctest::Approx(0.0));
        CHECK(eq.primal.rates[1] == doctest::Approx(0.0));
        CHECK(eq.primal.rates[2] == doctest::Approx(1.0));

        Rng rng(6);
        const EntropyProfile p = build_profile(random_source(3, rng));
        const LPSolution sorted = closed_form_alphaK(weights({3, 2, 1}), p);
        const LPSolution uns = closed_form_alphaK(weights({1, 3, 2}), p);
        const LPSolution ref = solve_simplex(make_instance(p, 3, weights({1, 3, 2})));
        CHECK(uns.value == doctest::Approx(ref.value).epsilon(1e-9));
        CHECK(verify_multiplier(uns.dual, weights({1, 3, 2}), p, 3, ref.value).pass());
        CHECK(verify_multiplier(sorted.dual, weights({3, 2, 1}), p, 3, sorted.value).pass());
    }

    TEST_CASE("weight classes") {
        WeightClass c = weight_class(weights({1, 1, 1}), 2);
        CHECK(c.l == 0);
        CHECK(c.lambda == Rational(3, 2));
        c = weight_class(weights({3, 1, 1}), 2);
        CHECK(c.l == 1);
        CHECK(c.lambda == 2);
        c = weight_class(weights({1, 1, 1}), 3);
        CHECK(c.l == 0);
        CHECK(c.lambda == 1);
        CHECK_THROWS_AS(weight_class(weights({1, 2, 1}), 2), std::domain_error);
    }

    TEST_CASE("weight validation") {
        CHECK_THROWS_AS(validate_weights(WeightVector{Rational(-1), Rational(1)}), std::invalid_argument);
        CHECK(is_sorted_desc(weights({3, 3, 1})));
        CHECK(descending_order(weights({1, 3, 2})) == std::vector<int>{2, 3, 1});
    }
}
