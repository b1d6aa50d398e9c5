#include "dmldc/rational.hpp"
#include "dmldc/subset.hpp"

#include <doctest.h>

#include <array>

using namespace dmldc;

TEST_SUITE("subset") {
    TEST_CASE("ranked subsets pick elements by rank") {
        const std::array<int, 2> t13{1, 3};
        CHECK(ranked_subset(SubsetId::of({2, 5, 7}), t13) == SubsetId::of({2, 7}));
        const std::array<int, 3> t134{1, 3, 4};
        CHECK(ranked_subset(SubsetId::of({1, 2, 3, 4}), t134) == SubsetId::of({1, 3, 4}));
        const std::array<int, 1> t1{1};
        CHECK(ranked_subset(SubsetId::of({4}), t1) == SubsetId::of({4}));
        const std::array<int, 1> t3{3};
        CHECK_THROWS_AS(ranked_subset(SubsetId::of({4}), t3), std::domain_error);
    }

    TEST_CASE("drop_rank and prefix_ranks") {
        CHECK(drop_rank(SubsetId::of({1, 2, 3, 4}), 2) == SubsetId::of({1, 3, 4}));
        CHECK(prefix_ranks(SubsetId::of({2, 5, 7}), 2) == SubsetId::of({2, 5}));
        CHECK(prefix_ranks(SubsetId::of({2, 5, 7}), 0).empty());
    }

    TEST_CASE("enumeration and binomials") {
        CHECK(subsets_of_size(4, 2).size() == 6);
        CHECK(subsets_of_size(5, 0).size() == 1);
        CHECK(binomial(6, 3) == 20);
        CHECK(binomial(3, 4) == 0);
        const auto s = subsets_of_size(4, 2);
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].mask < s[i].mask);
    }

    TEST_CASE("text round trip") {
        CHECK(SubsetId::of({1, 3}).to_string() == "[1,3]");
        CHECK(parse_subset("[1,3]") == SubsetId::of({1, 3}));
        CHECK(parse_subset("{2}") == SubsetId::of({2}));
        CHECK(parse_subset("[]").empty());
        CHECK_THROWS(parse_subset("[1,x]"));
        CHECK(SubsetId::full(3).elements() == std::vector<int>{1, 2, 3});
    }
}

TEST_SUITE("rational") {
    TEST_CASE("parsing and printing") {
        CHECK(parse_rational("3/6") == Rational(1, 2));
        CHECK(to_string(parse_rational("3/6")) == "1/2");
        CHECK(to_string(parse_rational("4")) == "4");
        CHECK(parse_rational("0.25") == Rational(1, 4));
        CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
        CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    }

    TEST_CASE("lists and doubles") {
        const auto w = parse_rational_list("3,1,1");
        REQUIRE(w.size() == 3);
        CHECK(w[0] == 3);
        CHECK(w[2] == 1);
        CHECK(parse_rational_list("1/2, 1/3")[1] == Rational(1, 3));
        CHECK(from_double(0.1).get_d() == 0.1);
        CHECK(from_double(0.375) == Rational(3, 8));
    }
}
