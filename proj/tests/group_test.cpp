#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gain/group.hpp"
#include "test_support.hpp"

using namespace gain;
using testsupport::Z;
using testsupport::el;

TEST_CASE("parse_group_spec reads the grammar") {
    GroupSpec z = parse_group_spec("Z");
    CHECK(z.free_rank == 1);
    CHECK(z.torsion.empty());

    GroupSpec mixed = parse_group_spec("Z^2 x Z/4 x Z/2");
    CHECK(mixed.free_rank == 2);
    CHECK(mixed.torsion == std::vector<long long>{4, 2});

    CHECK(parse_group_spec("  Z^2x Z/4  ").free_rank == 2);
    CHECK(parse_group_spec("Z x Z").free_rank == 2);
    CHECK(parse_group_spec("Z/6").torsion == std::vector<long long>{6});
}

TEST_CASE("parse_group_spec rejects bad input with a position") {
    CHECK_THROWS_AS(parse_group_spec("Z/1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("Z^0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("Q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("Z x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group_spec("Z Z"), std::invalid_argument);
    try {
        parse_group_spec("Z x Q");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("position 4") != std::string::npos);
    }
}

TEST_CASE("addition and negation examples") {
    GroupSpec z = Z("Z");
    CHECK(add(z, el({2}), el({3})) == el({5}));
    CHECK(negate(z, el({5})) == el({-5}));

    GroupSpec z4 = Z("Z/4");
    CHECK(add(z4, el({3}), el({3})) == el({2}));
    CHECK(negate(z4, el({3})) == el({1}));
    CHECK(negate(z4, el({0})) == el({0}));

    GroupSpec z43 = Z("Z/4 x Z/3");
    CHECK(add(z43, el({3, 2}), el({1, 2})) == el({0, 1}));

    CHECK_THROWS_AS(add(z4, el({1, 2}), el({0})), std::invalid_argument);
}

TEST_CASE("order of elements") {
    GroupSpec z4 = Z("Z/4");
    CHECK(order(z4, el({2})) == 2);
    CHECK(order(z4, el({0})) == 1);

    GroupSpec z43 = Z("Z/4 x Z/3");
    CHECK(order(z43, el({2, 1})) == 6);

    GroupSpec z = Z("Z");
    CHECK(order(z, el({1})) == std::nullopt);
    CHECK(order(z, el({0})) == 1);
}

TEST_CASE("order matches iterated addition on a finite group") {
    GroupSpec spec = Z("Z/4 x Z/3");
    for (const GroupElement& a : enumerate_elements(spec)) {
        long long expected = *order(spec, a);
        GroupElement acc = zero_element(spec);
        long long steps = 0;
        do {
            acc = add(spec, acc, a);
            ++steps;
        } while (!is_zero(acc));
        CHECK(steps == expected);
    }
}

TEST_CASE("involution subgroup examples") {
    InvolutionSubgroup sub = involution_subgroup(Z("Z/4 x Z/3"));
    CHECK(sub.generators.size() == 1);
    CHECK(sub.generators[0] == el({2, 0}));
    auto elems = involution_elements(Z("Z/4 x Z/3"));
    CHECK(std::set<GroupElement>(elems.begin(), elems.end()) ==
          std::set<GroupElement>{el({0, 0}), el({2, 0})});

    CHECK(involution_subgroup(Z("Z^3")).generators.empty());
    CHECK(involution_count(Z("Z^3")) == 1);

    CHECK(involution_count(Z("Z/2 x Z/2")) == 4);
    CHECK(involution_elements(Z("Z/2 x Z/2")).size() == 4);
}

TEST_CASE("involution subgroup equals the doubling kernel on small groups") {
    for (const char* text : {"Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/4 x Z/3", "Z/6 x Z/2", "Z/8"}) {
        GroupSpec spec = Z(text);
        std::set<GroupElement> kernel;
        for (const GroupElement& a : enumerate_elements(spec))
            if (is_zero(add(spec, a, a))) kernel.insert(a);
        auto elems = involution_elements(spec);
        CHECK(std::set<GroupElement>(elems.begin(), elems.end()) == kernel);
        CHECK(involution_count(spec) == kernel.size());

        int evens = 0;
        for (long long m : spec.torsion)
            if (m % 2 == 0) ++evens;
        CHECK(kernel.size() == (1ull << evens));
    }
}

TEST_CASE("enumerate_elements is lexicographic and complete") {
    auto z2 = enumerate_elements(Z("Z/2"));
    CHECK(z2 == std::vector<GroupElement>{el({0}), el({1})});

    auto z23 = enumerate_elements(Z("Z/2 x Z/3"));
    CHECK(z23.size() == 6);
    CHECK(z23.front() == el({0, 0}));
    CHECK(z23.back() == el({1, 2}));
    CHECK(std::is_sorted(z23.begin(), z23.end()));

    CHECK_THROWS_AS(enumerate_elements(Z("Z")), std::domain_error);
}

TEST_CASE("group axioms hold exhaustively on groups of size <= 64") {
    for (const char* text : {"Z/2", "Z/3", "Z/4", "Z/2 x Z/2", "Z/4 x Z/3", "Z/8 x Z/2"}) {
        GroupSpec spec = Z(text);
        auto elems = enumerate_elements(spec);
        REQUIRE(elems.size() <= 64);
        GroupElement zero = zero_element(spec);
        for (const auto& a : elems) {
            CHECK(add(spec, a, zero) == a);
            CHECK(is_zero(add(spec, a, negate(spec, a))));
            for (const auto& b : elems) {
                CHECK(add(spec, a, b) == add(spec, b, a));
                for (const auto& c : elems)
                    CHECK(add(spec, add(spec, a, b), c) == add(spec, a, add(spec, b, c)));
            }
        }
    }
}

TEST_CASE("group axioms hold on random elements of an infinite group") {
    GroupSpec spec = Z("Z^2 x Z/6");
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        GroupElement a = sample_element(spec, rng);
        GroupElement b = sample_element(spec, rng);
        GroupElement c = sample_element(spec, rng);
        CHECK(add(spec, add(spec, a, b), c) == add(spec, a, add(spec, b, c)));
        CHECK(add(spec, a, b) == add(spec, b, a));
        CHECK(is_zero(add(spec, a, negate(spec, a))));
    }
}

TEST_CASE("sample_element is deterministic and in range") {
    GroupSpec z2 = Z("Z/2");
    GroupElement a = sample_element(z2, std::uint64_t{42});
    CHECK((a == el({0}) || a == el({1})));
    CHECK(sample_element(z2, std::uint64_t{42}) == a);

    GroupSpec z = Z("Z");
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        GroupElement x = sample_element(z, rng);
        CHECK(x[0] >= -kFreeCoordinateSampleBound);
        CHECK(x[0] <= kFreeCoordinateSampleBound);
    }

    GroupSpec mixed = Z("Z x Z/5");
    CHECK(sample_element(mixed, std::uint64_t{9}) == sample_element(mixed, std::uint64_t{9}));
}

TEST_CASE("element text form") {
    GroupSpec spec = Z("Z x Z/4");
    CHECK(parse_element("2,7", spec) == el({2, 3}));
    CHECK(parse_element(" -3 , -1 ", spec) == el({-3, 3}));
    CHECK(element_str(el({2, 0, 1})) == "2,0,1");
    CHECK_THROWS_AS(parse_element("1", spec), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("1,2,3", spec), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("a,b", spec), std::invalid_argument);
}

TEST_CASE("cardinality") {
    CHECK(Z("Z/4 x Z/3").cardinality() == 12);
    CHECK_THROWS_AS(Z("Z").cardinality(), std::domain_error);
    CHECK(Z("Z/2").str() == "Z/2");
    CHECK(Z("Z^2 x Z/4").str() == "Z^2 x Z/4");
}
