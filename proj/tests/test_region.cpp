#include "dmldc/region.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace dmldc;
using namespace dmldc::testing;

TEST_SUITE("region") {
    TEST_CASE("constraint counts follow the closed formula") {
        CHECK(layer_constraint_count(3, 1) == 3);
        CHECK(layer_constraint_count(3, 2) == 9);
        CHECK(layer_constraint_count(3, 3) == 7);
        for (int K = 1; K <= 5; ++K)
            for (int a = 1; a <= K; ++a) {
                long long f = 0;
                for (int v = 1; v <= a; ++v) f += binomial(K, v) * binomial(K - v, a - v);
                CHECK(layer_constraint_count(K, a) == f);
                CHECK(static_cast<long long>(layer_constraint_pairs(K, a).size()) == f);
            }
    }

    TEST_CASE("layer regions") {
        const EntropyProfile iid = iid_bits_profile(3);
        const LayerRegion r1 = build_layer_region(iid, 1);
        CHECK(r1.halfspaces.size() == 3);
        for (int a = 1; a <= 3; ++a)
            for (const Halfspace& h : build_layer_region(iid, a).halfspaces)
                CHECK(h.rhs == doctest::Approx(h.V.size()));
        for (const Halfspace& h : build_layer_region(iid, 2).halfspaces) {
            CHECK(h.V.disjoint(h.Vp));
            CHECK(h.V.size() + h.Vp.size() == 2);
        }
    }

    TEST_CASE("membership") {
        const EntropyProfile iid = iid_bits_profile(3);
        const MembershipResult in = region_membership(iid, RatePoint{{3, 3, 3}});
        REQUIRE(in.member);
        for (const auto& layer : in.split)
            for (double r : layer) CHECK(r == doctest::Approx(1.0));
        CHECK_FALSE(region_membership(iid, RatePoint{{2.9, 3, 3}}).member);

        // Duplicated-bit layer 2: the point (1,1,1) per layer summed.
        const EntropyProfile db = duplicated_bit_profile();
        const MembershipResult m = region_membership(db, RatePoint{{3, 3, 3}});
        REQUIRE(m.member);
        for (int a = 1; a <= 3; ++a) CHECK(contains(build_layer_region(db, a), RatePoint{m.split[a - 1]}, 1e-9));
    }

    TEST_CASE("vertex enumeration") {
        const EntropyProfile iid = iid_bits_profile(3);
        const auto v1 = enumerate_vertices(build_layer_region(iid, 1));
        REQUIRE(v1.size() == 1);
        CHECK(v1[0].rates == std::vector<double>{1, 1, 1});

        const EntropyProfile db = duplicated_bit_profile();
        const auto v2 = enumerate_vertices(build_layer_region(db, 2));
        REQUIRE(v2.size() == 1);
        for (double r : v2[0].rates) CHECK(r == doctest::Approx(1.0));

        Rng rng(2);
        const EntropyProfile p = build_profile(random_source(3, rng));
        const auto va = enumerate_vertices(build_layer_region(p, 1));
        REQUIRE(va.size() == 1);
        for (int k = 1; k <= 3; ++k) CHECK(va[0].rates[k - 1] == doctest::Approx(p.H(1, SubsetId::of({k}))));
        CHECK(same_vertex_sets(va, va));
        CHECK_FALSE(same_vertex_sets(va, v2));
    }

    TEST_CASE("support values") {
        CHECK(std::abs(support_value(iid_bits_profile(3), weights({1, 1, 1})) - 9.0) <= 1e-12);
        CHECK(std::abs(support_value(duplicated_bit_profile(), weights({1, 1, 1})) - 9.0) <= 1e-9);
        LayeredSource one;
        one.K = 1;
        one.layers = {LayerPmf{{2}, {0.25, 0.75}}};
        CHECK(support_value(build_profile(one), weights({3})) == doctest::Approx(3 * h2(0.25)));
    }
}
