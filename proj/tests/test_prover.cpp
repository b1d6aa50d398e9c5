#include "dmldc/k3.hpp"
#include "dmldc/prover.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace dmldc;
using namespace dmldc::testing;
using prover::EntropyFunctional;

namespace {

EntropyFunctional functional(int K, std::initializer_list<std::pair<SubsetId, long>> terms) {
    EntropyFunctional f(K);
    for (const auto& [V, c] : terms) f.add(V, Rational(c));
    return f;
}

const SubsetId S1 = SubsetId::of({1}), S2 = SubsetId::of({2}), S3 = SubsetId::of({3});
const SubsetId S12 = SubsetId::of({1, 2}), S13 = SubsetId::of({1, 3}), S23 = SubsetId::of({2, 3});
const SubsetId S123 = SubsetId::full(3);

}  // namespace

TEST_SUITE("prover") {
    TEST_CASE("functionals from multipliers") {
        MultiplierFamily c;
        c.alpha = 2;
        c.add(S12, SubsetId(), 1);
        CHECK(prover::functional_from_multipliers(c, 2) == functional(2, {{S12, 1}}));
        MultiplierFamily d;
        d.alpha = 2;
        d.add(S1, S2, 1);
        CHECK(prover::functional_from_multipliers(d, 2) == functional(2, {{S12, 1}, {S2, -1}}));
    }

    TEST_CASE("elemental counts") {
        CHECK(prover::elemental_inequalities(2).size() == 3);
        CHECK(prover::elemental_inequalities(3).size() == 9);
        for (int K = 1; K <= 6; ++K)
            CHECK(static_cast<long long>(prover::elemental_inequalities(K).size()) == prover::elemental_count(K));
        CHECK_THROWS_AS(prover::elemental_inequalities(9), std::domain_error);
    }

    TEST_CASE("subadditivity is proved by the single K = 2 elemental") {
        const auto cert = prover::prove_nonneg(functional(2, {{S1, 1}, {S2, 1}, {S12, -1}}));
        REQUIRE(cert.proved());
        CHECK(prover::replay(cert));
        const auto& el = prover::elemental_inequalities(2);
        for (std::size_t i = 0; i < el.size(); ++i)
            CHECK(cert.lambdas[i] == (el[i].f == functional(2, {{S1, 1}, {S2, 1}, {S12, -1}}) ? 1 : 0));
    }

    TEST_CASE("its negation is refuted by two equal bits") {
        const auto cert = prover::prove_nonneg(functional(2, {{S12, 1}, {S1, -1}, {S2, -1}}));
        REQUIRE_FALSE(cert.proved());
        CHECK(prover::replay(cert));
        CHECK(cert.counter_value == -1);
        // The counterexample normalises H(X_N) = 1.
        CHECK(cert.counterexample[3] == 1);
        CHECK(validate_polymatroid(std::vector<double>{0, cert.counterexample[1].get_d(), cert.counterexample[2].get_d(), 1.0}, 2)
                  .ok());
    }

    TEST_CASE("Han's inequality for K = 3") {
        const auto cert = prover::prove_nonneg(functional(3, {{S12, 1}, {S13, 1}, {S23, 1}, {S123, -2}}));
        CHECK(cert.proved());
        CHECK(prover::replay(cert));
    }

    TEST_CASE("replay rejects tampered certificates") {
        auto cert = prover::prove_nonneg(functional(3, {{S12, 1}, {S13, 1}, {S23, 1}, {S123, -2}}));
        REQUIRE(cert.proved());
        for (Rational& l : cert.lambdas)
            if (sgn(l) > 0) {
                l += 1;
                break;
            }
        CHECK_FALSE(prover::replay(cert));
        auto ref = prover::prove_nonneg(functional(2, {{S12, 1}, {S1, -1}, {S2, -1}}));
        ref.counterexample[1] = 3;  // breaks monotonicity against H(N) = 1
        CHECK_FALSE(prover::replay(ref));
    }

    TEST_CASE("symmetrisation averages coefficients") {
        const EntropyFunctional s = prover::symmetrize(functional(3, {{S1, 3}, {S12, -3}}));
        for (SubsetId v : {S1, S2, S3}) CHECK(s[v] == 1);
        for (SubsetId v : {S12, S13, S23}) CHECK(s[v] == -1);
        // H1 - H2 is not valid, its symmetrisation (zero) is.
        EntropyFunctional d = functional(2, {{S1, 1}, {S2, -1}});
        CHECK_FALSE(prover::prove_nonneg(d).proved());
        const auto sc = prover::prove_nonneg(d, true);
        CHECK(sc.proved());
        CHECK(sc.target.is_zero());
    }

    TEST_CASE("star chains") {
        // K = 2, w = (1,1): H1 + H2 >= H12.
        MultiplierFamily l1, l2;
        l1.alpha = 1;
        l1.add(S1, SubsetId(), 1);
        l1.add(S2, SubsetId(), 1);
        l2.alpha = 2;
        l2.add(S12, SubsetId(), 1);
        const prover::ChainReport r2 = prover::verify_star_chain({l1, l2}, 2);
        CHECK(r2.pass());
        CHECK(r2.steps.size() == 1);

        // K = 3, w = (1,1,1): singleton level, row 1A, chain-rule level.
        MultiplierFamily a1, a3;
        a1.alpha = 1;
        for (SubsetId v : {S1, S2, S3}) a1.add(v, SubsetId(), 1);
        a3.alpha = 3;
        a3.add(S123, SubsetId(), 1);
        const MultiplierFamily a2 = k3::table_multipliers("1A", weights({1, 1, 1}), {2, 1, 1});
        const prover::ChainReport r3 = prover::verify_star_chain({a1, a2, a3}, 3);
        CHECK(r3.pass());
        CHECK(r3.steps.size() == 2);
        // Reversed order is not a valid chain.
        CHECK_FALSE(prover::verify_functional_chain({prover::functional_from_multipliers(a3, 3),
                                                     prover::functional_from_multipliers(a1, 3)})
                        .pass());
    }

    TEST_CASE("numeric spot checks") {
        const EntropyFunctional mi = functional(2, {{S1, 1}, {S2, 1}, {S12, -1}});
        CHECK(prover::numeric_spotcheck(mi, 500, 1) >= -1e-12);
        CHECK(prover::numeric_spotcheck(functional(2, {{S1, -1}}), 200, 1) < 0);
        const auto samples = prover::sample_entropy_vectors(3, 300, 4);
        CHECK(samples.size() == 300);
        CHECK(prover::min_over_samples(functional(3, {{S12, 1}, {S13, 1}, {S23, 1}, {S123, -2}}), samples) >= -1e-12);
    }

    TEST_CASE("extended Han instances for K <= 4") {
        for (int K = 2; K <= 4; ++K)
            for (std::uint32_t m = 1; m < (1u << K); ++m)
                for (int i = 0; i < SubsetId(m).size(); ++i) {
                    const auto cert = prover::prove_nonneg(prover::extended_han(K, SubsetId(m), i));
                    CAPTURE(K);
                    CAPTURE(m);
                    CAPTURE(i);
                    CHECK(cert.proved());
                    CHECK(prover::replay(cert));
                }
        // |V| = 3, i = 0 is Han's inequality on V.
        CHECK(prover::extended_han(3, S123, 0) == functional(3, {{S12, 1}, {S13, 1}, {S23, 1}, {S123, -2}}));
    }
}
