#include "dmldc/core.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace dmldc;
using namespace dmldc::testing;

TEST_SUITE("core") {
    TEST_CASE("entropy_of_subset") {
        CHECK(entropy_of_subset(iid_bits_layer(3), SubsetId::of({1, 3})) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(entropy_of_subset(duplicated_bit_layer(), SubsetId::of({1, 2})) == doctest::Approx(1.0).epsilon(1e-15));

        // Direct summation over the eight cells.
        LayerPmf l;
        l.alphabet_sizes = {2, 2, 2};
        l.probs = {1. / 16, 3. / 16, 1. / 8, 1. / 8, 1. / 32, 7. / 32, 1. / 4, 0};
        double direct = 0;
        for (double p : l.probs)
            if (p > 0) direct -= p * std::log2(p);
        CHECK(std::abs(entropy_of_subset(l, SubsetId::full(3)) - direct) <= 1e-12);
        // Marginal of component 2: P(u2 = 0) = cells 0,1,4,5.
        const double p0 = 1. / 16 + 3. / 16 + 1. / 32 + 7. / 32;
        CHECK(std::abs(entropy_of_subset(l, SubsetId::of({2})) - h2(p0)) <= 1e-12);
    }

    TEST_CASE("cond_entropy") {
        const EntropyProfile iid = iid_bits_profile(3);
        CHECK(cond_entropy(iid, 2, SubsetId::of({1}), SubsetId::of({2})) == doctest::Approx(1.0));
        const EntropyProfile db = duplicated_bit_profile();
        CHECK(std::abs(cond_entropy(db, 2, SubsetId::of({1}), SubsetId::of({2}))) <= 1e-12);
        CHECK(cond_entropy(db, 2, SubsetId::of({1, 3}), SubsetId()) == db.H(2, SubsetId::of({1, 3})));
        CHECK_THROWS_AS(cond_entropy(db, 2, SubsetId(), SubsetId::of({1})), std::domain_error);
        CHECK_THROWS_AS(cond_entropy(db, 2, SubsetId::of({1}), SubsetId::of({1, 2})), std::domain_error);
    }

    TEST_CASE("build_profile") {
        const EntropyProfile iid = iid_bits_profile(3);
        for (int a = 1; a <= 3; ++a)
            for (std::uint32_t m = 1; m < 8; ++m) CHECK(iid.H(a, SubsetId(m)) == doctest::Approx(SubsetId(m).size()));

        LayeredSource one;
        one.K = 1;
        one.layers = {LayerPmf{{2}, {0.25, 0.75}}};
        CHECK(build_profile(one).H(1, SubsetId::of({1})) == doctest::Approx(0.8112781244591328).epsilon(1e-15));

        LayeredSource det;
        det.K = 2;
        det.layers.assign(2, LayerPmf{{2, 3}, {0, 0, 1, 0, 0, 0}});
        const EntropyProfile d = build_profile(det);
        for (int a = 1; a <= 2; ++a)
            for (std::uint32_t m = 1; m < 4; ++m) CHECK(d.H(a, SubsetId(m)) == 0.0);
    }

    TEST_CASE("source validation names the layer") {
        LayeredSource s;
        s.K = 1;
        s.layers = {LayerPmf{{2}, {0.4, 0.5}}};
        CHECK_THROWS_WITH_AS(validate_source(s), doctest::Contains("layer 1"), std::invalid_argument);
        s.layers = {LayerPmf{{2}, {1.2, -0.2}}};
        CHECK_THROWS_AS(validate_source(s), std::invalid_argument);
        s.layers = {LayerPmf{{3}, {0.5, 0.5}}};
        CHECK_THROWS_AS(validate_source(s), std::invalid_argument);
    }

    TEST_CASE("symmetry detection") {
        const auto iid = is_symmetric_entropywise(iid_bits_profile(3));
        REQUIRE(iid.has_value());
        for (int a = 1; a <= 3; ++a)
            for (int m = 0; m <= 3; ++m) CHECK(iid->at(m, a) == doctest::Approx(m));
        CHECK_FALSE(is_symmetric_entropywise(duplicated_bit_profile()).has_value());

        Rng rng(3);
        LayeredSource s;
        s.K = 3;
        for (int a = 0; a < 3; ++a) s.layers.push_back(symmetrize_layer(random_layer({2, 2, 2}, PmfShape::Dense, rng)));
        const EntropyProfile p = build_profile(s);
        const auto sym = is_symmetric_entropywise(p, 1e-12);
        REQUIRE(sym.has_value());
        const EntropyProfile back = expand_symmetric(*sym);
        for (int a = 1; a <= 3; ++a)
            for (std::uint32_t m = 1; m < 8; ++m) CHECK(std::abs(back.H(a, SubsetId(m)) - p.H(a, SubsetId(m))) <= 1e-12);
    }

    TEST_CASE("polymatroid validation") {
        Rng rng(8);
        for (int t = 0; t < 20; ++t) CHECK(validate_polymatroid(build_profile(random_source(4, rng)), 1e-12).ok());

        // H({1,2}) < H({1}).
        std::vector<std::vector<double>> layers{{0, 1, 1, 0.5}, {0, 1, 1, 2}};
        const EntropyProfile mono = make_abstract_profile(2, layers, true);
        const PolymatroidReport r1 = validate_polymatroid(mono);
        REQUIRE_FALSE(r1.ok());
        CHECK(r1.violations.front().kind == PolymatroidViolation::Kind::Monotonicity);
        CHECK_THROWS_AS(make_abstract_profile(2, layers), std::invalid_argument);

        const std::vector<double> sub{0, 1, 1, 2.5};
        const PolymatroidReport r2 = validate_polymatroid(sub, 2);
        REQUIRE_FALSE(r2.ok());
        CHECK(r2.violations.front().kind == PolymatroidViolation::Kind::Submodularity);
    }

    TEST_CASE("relabelling invariance") {
        Rng rng(4);
        const LayerPmf l = random_layer({2, 3, 2}, PmfShape::Dense, rng);
        // Swap components 1 and 3: cell (a,b,c) -> (c,b,a).
        LayerPmf sw;
        sw.alphabet_sizes = {2, 3, 2};
        sw.probs.assign(12, 0.0);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 2; ++c) sw.probs[(c * 3 + b) * 2 + a] = l.probs[(a * 3 + b) * 2 + c];
        CHECK(entropy_of_subset(l, SubsetId::of({1})) == doctest::Approx(entropy_of_subset(sw, SubsetId::of({3}))));
        CHECK(entropy_of_subset(l, SubsetId::of({1, 2})) == doctest::Approx(entropy_of_subset(sw, SubsetId::of({2, 3}))));
    }

    TEST_CASE("random generators are seed-deterministic") {
        Rng a(42), b(42);
        const LayeredSource s1 = random_source(3, a), s2 = random_source(3, b);
        REQUIRE(s1.layers.size() == s2.layers.size());
        for (std::size_t i = 0; i < s1.layers.size(); ++i) CHECK(s1.layers[i].probs == s2.layers[i].probs);
        Rng r(1);
        for (int i = 0; i < 100; ++i) {
            const auto v = uniform_int(r, -3, 3);
            CHECK(v >= -3);
            CHECK(v <= 3);
        }
    }
}
