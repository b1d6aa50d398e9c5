#include "dmldc/io.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace dmldc;
using namespace dmldc::testing;
using io::json;

TEST_SUITE("io") {
    TEST_CASE("minimal K = 1 source") {
        const LayeredSource s = io::source_from_json(json::parse(R"({"K":1,"layers":[{"alphabets":[2],"probs":[0.25,0.75]}]})"));
        CHECK(s.K == 1);
        CHECK(s.layers[0].probs == std::vector<double>{0.25, 0.75});
        const LayeredSource e = io::source_from_json(json::parse(R"({"K":1,"layers":[{"alphabets":[2],"probs":["1/4","3/4"]}]})"));
        CHECK(e.layers[0].probs == s.layers[0].probs);
        CHECK(io::source_from_json(io::source_to_json(s)).layers[0].probs == s.layers[0].probs);
    }

    TEST_CASE("bad sources name the problem") {
        CHECK_THROWS_WITH(io::source_from_json(json::parse(R"({"K":1,"layers":[{"alphabets":[2],"probs":[0.4,0.5]}]})")),
                          doctest::Contains("layer 1"));
        CHECK_THROWS_WITH(io::source_from_json(json::parse(R"({"K":1,"layers":[{"alphabets":[2],"probs":["1/2","1/3"]}]})")),
                          doctest::Contains("layer 1"));
        CHECK_THROWS_WITH(io::source_from_json(json::parse(R"({"K":1,"layers":[{"alphabets":[2]}]})")),
                          doctest::Contains("probs"));
        CHECK_THROWS_WITH(io::source_from_json(json::parse(R"({"K":2,"layers":[]})")), doctest::Contains("layers"));
        CHECK_THROWS_WITH(io::source_from_json(json::parse(R"({"layers":[]})")), doctest::Contains("'K'"));
        CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), io::InputError);
    }

    TEST_CASE("weights") {
        CHECK(io::parse_weights("3,1,1") == weights({3, 1, 1}));
        CHECK(io::parse_weights("1/2,2/4")[1] == Rational(1, 2));
        CHECK_THROWS_AS(io::parse_weights("1,-2"), io::InputError);
        CHECK(io::weights_to_json(weights({3, 1})) == json::array({"3", "1"}));
    }

    TEST_CASE("profiles round trip and report missing keys") {
        const EntropyProfile p = duplicated_bit_profile();
        const EntropyProfile q = io::profile_from_json(io::profile_to_json(p));
        for (int a = 1; a <= 3; ++a)
            for (std::uint32_t m = 1; m < 8; ++m) CHECK(q.H(a, SubsetId(m)) == p.H(a, SubsetId(m)));
        json j = io::profile_to_json(p);
        j["entropies"].erase("2:[1,3]");
        CHECK_THROWS_WITH(io::profile_from_json(j), doctest::Contains("2:[1,3]"));
        const json bad = json::parse(R"({"K":2,"entropies":{"1:[1]":1,"1:[2]":1,"1:[1,2]":2.5,"2:[1]":1,"2:[2]":1,"2:[1,2]":2}})");
        CHECK_THROWS_AS(io::profile_from_json(bad), io::InputError);
        CHECK(io::profile_from_json(bad, true).H(1, SubsetId::of({1, 2})) == 2.5);
    }

    TEST_CASE("multipliers and functionals round trip exactly") {
        MultiplierFamily c;
        c.alpha = 2;
        c.add(SubsetId::of({1}), SubsetId::of({2}), Rational(1, 3));
        c.add(SubsetId::of({2, 3}), SubsetId(), Rational(5, 2));
        const MultiplierFamily d = io::multipliers_from_json(io::multipliers_to_json(c));
        CHECK(d.alpha == 2);
        CHECK(d.entries == c.entries);
        CHECK_THROWS_WITH(io::multipliers_from_json(json::parse(R"({"alpha":2,"entries":[{"V":[1],"Vp":[2],"c":"x"}]})")),
                          doctest::Contains("entries[0].c"));

        prover::EntropyFunctional f(3);
        f.add(SubsetId::of({1, 2}), Rational(1, 2));
        f.add(SubsetId::of({3}), Rational(-2));
        CHECK(io::functional_from_json(io::functional_to_json(f)) == f);
    }

    TEST_CASE("certificates") {
        prover::EntropyFunctional f(2);
        f.add(SubsetId::of({1}), 1);
        f.add(SubsetId::of({2}), 1);
        f.add(SubsetId::of({1, 2}), -1);
        const json p = io::certificate_to_json(prover::prove_nonneg(f));
        CHECK(p["status"] == "proved");
        CHECK(p["lambdas"].size() == 1);
        f *= Rational(-1);
        const json r = io::certificate_to_json(prover::prove_nonneg(f));
        CHECK(r["status"] == "refuted");
        CHECK(r["value"] == "-1");
        CHECK(r.contains("counterexample"));
    }

    TEST_CASE("symmetric profiles") {
        const SymmetricProfile s = io::symmetric_from_json(json::parse(R"({"K":2,"H":[[0,1,2],[0,1,1]]})"));
        CHECK(s.at(2, 2) == 1);
        CHECK_THROWS_AS(io::symmetric_from_json(json::parse(R"({"K":2,"H":[[0,2,1],[0,1,1]]})")), io::InputError);
    }

    TEST_CASE("region dump has one entry per layer") {
        const json r = io::region_to_json(iid_bits_profile(3));
        REQUIRE(r.size() == 3);
        CHECK(r[1]["halfspaces"].size() == 9);
        CHECK(r[0]["halfspaces"][0]["rhs"] == 1.0);
        // Dumps are byte-stable.
        CHECK(r.dump() == io::region_to_json(iid_bits_profile(3)).dump());
    }
}
