#include "doctest.h"

#include "kgraph/degree.hpp"

using namespace kgraph;

TEST_CASE("join, meet and order are coordinatewise") {
    CHECK(join(Degree{1, 0}, Degree{0, 1}) == Degree{1, 1});
    CHECK(meet(Degree{2, 1, 0}, Degree{1, 3, 0}) == Degree{1, 1, 0});
    CHECK(leq(Degree{1, 0}, Degree{1, 1}));
    CHECK(!leq(Degree{2, 0}, Degree{1, 1}));
    Degree m{3, 1};
    CHECK(join(m, m) == m);
    CHECK(meet(m, m) == m);
}

TEST_CASE("lattice laws by enumeration over small vectors") {
    std::vector<Degree> all;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) all.push_back(Degree{a, b});
    for (const Degree& x : all)
        for (const Degree& y : all) {
            CHECK(join(x, y) == join(y, x));
            CHECK(meet(x, y) == meet(y, x));
            // absorption
            CHECK(join(x, meet(x, y)) == x);
            CHECK(meet(x, join(x, y)) == x);
            for (const Degree& z : all) {
                CHECK(join(join(x, y), z) == join(x, join(y, z)));
                CHECK(meet(meet(x, y), z) == meet(x, meet(y, z)));
            }
        }
}

TEST_CASE("rank mismatch is rejected") {
    CHECK_THROWS_AS(join(Degree{1}, Degree{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(minus(Degree{1, 0}, Degree{0, 1}), std::invalid_argument);
}

TEST_CASE("degree text round trips") {
    CHECK(parse_degree("1,0") == Degree{1, 0});
    CHECK(parse_degree("12") == Degree{12});
    CHECK(Degree{0, 3, 1}.str() == "0,3,1");
    CHECK_THROWS_AS(parse_degree(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_degree("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_degree("1,-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_degree("a,b"), std::invalid_argument);
}

TEST_CASE("degrees_upto is complete and ordered") {
    auto all = degrees_upto(Degree{2, 1});
    CHECK(all.size() == 6);
    CHECK(all.front() == Degree{0, 0});
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(degree_less(all[i - 1], all[i]));
}

TEST_CASE("unit vectors") {
    CHECK(Degree::unit(3, 2) == Degree{0, 1, 0});
    CHECK(Degree::zero(2) == Degree{0, 0});
    CHECK_THROWS_AS(Degree::unit(2, 3), std::invalid_argument);
}
