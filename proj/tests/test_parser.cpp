#include <doctest.h>

#include <random>

#include "cb/parse.hpp"

using namespace cb;

TEST_SUITE_BEGIN("parser");

TEST_CASE("expansion matches hand result") {
    MPoly p = parse_poly("(v^2+w^2)^2 - v^2 + w^2");
    MPoly q = parse_poly("v^4 + 2*v^2*w^2 + w^4 - v^2 + w^2");
    CHECK(p == q);
    CHECK(parse_poly("3/4*v - 1/4*v") == parse_poly("1/2*v"));
    CHECK(parse_poly("-v + 2*v") == parse_poly("v"));
    CHECK(parse_poly("u'^2 + 1").has_var("u'"));
}

TEST_CASE("error positions") {
    auto pos_of = [](const std::string& text) -> std::size_t {
        try {
            parse_poly(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(pos_of("v^") == 2);
    CHECK(pos_of("v +") == 3);
    CHECK(pos_of("(v + w") == 6);
    CHECK(pos_of("v $ w") == 2);
    CHECK(pos_of("v ^ 1/2") == 4);
    CHECK(pos_of("") == 0);
    try {
        parse_poly("v $");
        FAIL("expected UnknownCharacter");
    } catch (const ParseError& e) {
        CHECK(e.code() == ErrorCode::UnknownCharacter);
    }
}

TEST_CASE("print-parse fixed point on random polynomials") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> c(-20, 20), den(1, 9), e(0, 5), nt(1, 8);
    std::vector<std::string> vars{"u", "v", "w"};
    for (int trial = 0; trial < 1000; ++trial) {
        MPoly p(vars);
        int terms = nt(rng);
        for (int t = 0; t < terms; ++t)
            p.insert_term({e(rng), e(rng), e(rng)}, Scalar(c(rng), den(rng)));
        std::string text = p.to_string();
        MPoly q = parse_poly(text);
        CHECK(q == p.in_context(q.vars()));
        CHECK(q.to_string() == text);
        MPoly r = parse_poly(q.to_string());
        CHECK(r == q);
    }
}

TEST_SUITE_END();
