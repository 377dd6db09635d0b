#include <doctest.h>

#include <random>

#include "cb/factor.hpp"
#include "cb/parse.hpp"
#include "cb/sturm.hpp"
#include "cb/sum_of_squares.hpp"

using namespace cb;

namespace {
MPoly P(const std::string& text) { return parse_poly(text); }
}

TEST_SUITE_BEGIN("univariate");

TEST_CASE("sturm root counts") {
    CHECK(sturm_real_roots(P("w^2 + 1")) == 0);
    CHECK(sturm_real_roots(P("w^2 - 2")) == 2);
    CHECK(sturm_real_roots(P("w^3 - w"), Scalar(-2), Scalar(2)) == 3);
    CHECK(sturm_real_roots(P("w^3 - w"), Scalar(0), Scalar(2)) == 2);    // roots 0, 1
    CHECK(sturm_real_roots(P("w^3 - w"), Scalar(1, 2), Scalar(2)) == 1);
    CHECK(sturm_real_roots(P("7")) == 0);
    CHECK(sturm_real_roots(P("(w^2+1)*(w-5)")) == 1);
    CHECK(sturm_real_roots(P("(w-1)^2*(w+3)")) == 2);  // distinct roots
    // endpoints that are themselves roots
    CHECK(sturm_real_roots(P("w^2 - 1"), Scalar(-1), Scalar(1)) == 2);
    CHECK(sturm_real_roots(P("w^2 - 1"), Scalar(-1), Scalar(0)) == 1);
}

TEST_CASE("sturm counts match factorization-derived counts") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> small(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        // product of linear factors and definite quadratics with known real roots
        std::vector<Scalar> roots;
        MPoly p = P("1");
        int nlin = 1 + (trial % 3);
        for (int i = 0; i < nlin; ++i) {
            int r = small(rng);
            MPoly lin = parse_poly("w - (" + std::to_string(r) + ")", {"w"});
            p = p.in_context({"w"}) * lin;
            roots.push_back(Scalar(r));
        }
        int nquad = trial % 2;
        for (int i = 0; i < nquad; ++i) {
            int b = small(rng), c = std::abs(small(rng)) + 7;  // discriminant < 0
            p *= parse_poly("w^2 + (" + std::to_string(b) + ")*w + (" + std::to_string(c) + ")", {"w"});
        }
        std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        CHECK(sturm_real_roots(p) == static_cast<int>(roots.size()));
    }
}

TEST_CASE("negative value witness") {
    auto w = negative_value_witness(P("w^2 - 2*w + 1"));  // (w-1)^2, nonnegative
    CHECK(!w.has_value());
    auto u = negative_value_witness(P("w^2 - 1"));
    REQUIRE(u.has_value());
    CHECK(P("w^2 - 1").set_vars({{"w", *u}}).constant_value().sign() < 0);
    auto v = negative_value_witness(P("0 - w^2"));
    REQUIRE(v.has_value());
    auto odd = negative_value_witness(P("w^3 + 10"));
    REQUIRE(odd.has_value());
    CHECK(P("w^3 + 10").set_vars({{"w", *odd}}).constant_value().sign() < 0);
    CHECK(!negative_value_witness(P("(w^2-2)^2")).has_value());
    auto tight = negative_value_witness(P("(w^2-2)^2*(w^2 - 3)"));
    REQUIRE(tight.has_value());
}

TEST_CASE("factor over the rationals") {
    auto fac = factor_univariate(P("w^4 - 1"), CoeffField::Rationals);
    CHECK(fac.parts.size() == 3);
    MPoly prod = MPoly::constant({"w"}, fac.content);
    for (const auto& part : fac.parts) {
        prod *= part.factor.pow(part.multiplicity);
        CHECK(part.multiplicity == 1);
    }
    CHECK(prod == P("w^4 - 1").in_context({"w"}));

    auto sq = factor_univariate(P("(w^2+1)^2"), CoeffField::Rationals);
    REQUIRE(sq.parts.size() == 1);
    CHECK(sq.parts[0].factor == P("w^2 + 1").in_context({"w"}));
    CHECK(sq.parts[0].multiplicity == 2);

    auto scaled = factor_univariate(P("6*w^2 - 6"), CoeffField::Rationals);
    CHECK(scaled.content == Scalar(6));
    CHECK(scaled.parts.size() == 2);
}

TEST_CASE("factor over the gaussian rationals") {
    auto fac = factor_univariate(P("w^2 + 1"), CoeffField::GaussianRationals);
    REQUIRE(fac.parts.size() == 2);
    MPoly prod = MPoly::constant({"w"}, fac.content);
    for (const auto& part : fac.parts) prod *= part.factor.pow(part.multiplicity);
    CHECK(prod == P("w^2 + 1").in_context({"w"}));
    bool has_i = false;
    for (const auto& part : fac.parts)
        for (const auto& [e, c] : part.factor.terms())
            if (!c.is_real()) has_i = true;
    CHECK(has_i);

    // w^4+1 splits as (w^2+i)(w^2-i); w^2+3 stays irreducible
    auto quart = factor_univariate(P("w^4 + 1"), CoeffField::GaussianRationals);
    CHECK(quart.parts.size() == 2);
    auto stay = factor_univariate(P("w^2 + 3"), CoeffField::GaussianRationals);
    CHECK(stay.parts.size() == 1);
}

TEST_CASE("factoring recombines on random products") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> small(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly p = parse_poly(std::to_string(1 + std::abs(small(rng))), {"w"});
        int pieces = 1 + trial % 3;
        for (int i = 0; i < pieces; ++i) {
            int kind = trial % 2 + i;
            if (kind % 2 == 0)
                p *= parse_poly("w + (" + std::to_string(small(rng)) + ")", {"w"});
            else
                p *= parse_poly("w^2 + (" + std::to_string(small(rng)) + ")*w + (" +
                                    std::to_string(small(rng)) + ")",
                                {"w"});
        }
        if (p.degree_in("w") > 8 || p.is_constant()) continue;
        auto fac = factor_univariate(p, CoeffField::Rationals);
        MPoly prod = MPoly::constant({"w"}, fac.content);
        for (const auto& part : fac.parts) prod *= part.factor.pow(part.multiplicity);
        CHECK(prod == p);
    }
}

TEST_CASE("degree six with two cubic factors") {
    MPoly p = P("(w^3 - w - 1)*(w^3 - 2)");
    auto fac = factor_univariate(p, CoeffField::Rationals);
    CHECK(fac.parts.size() == 2);
    MPoly prod = MPoly::constant({"w"}, fac.content);
    for (const auto& part : fac.parts) prod *= part.factor.pow(part.multiplicity);
    CHECK(prod == p.in_context({"w"}));
}

TEST_CASE("degree bound is enforced") {
    CHECK_THROWS_AS(factor_univariate(P("w^9 + 1"), CoeffField::Rationals), Error);
    try {
        factor_univariate(P("w^9 + 1"), CoeffField::Rationals);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeTooLarge);
    }
}

TEST_CASE("rational roots and quadratic-field roots") {
    auto roots = rational_roots(P("2*w^3 - 3*w^2 - 3*w + 2"));  // roots -1, 1/2, 2
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == Scalar(-1));
    CHECK(roots[1] == Scalar(1, 2));
    CHECK(roots[2] == Scalar(2));

    auto qr = roots_in_quadratic_fields(P("(w^2 - 2)*(w - 3)"));
    CHECK(qr.complete);
    REQUIRE(qr.roots.size() == 3);
    auto ir = roots_in_quadratic_fields(P("w^2 + 4"));
    CHECK(ir.complete);
    CHECK(ir.roots[0] == Scalar(2) * Scalar::i());
    auto hard = roots_in_quadratic_fields(P("w^3 - 2"));
    CHECK(!hard.complete);
}

TEST_CASE("sum of two squares: monomial and constant splits") {
    auto s1 = sum_of_two_squares(P("w^4 + 1"));
    CHECK(s1.a == P("w^2").in_context({"w"}));
    CHECK(s1.b == P("1").in_context({"w"}));
    CHECK(s1.extension_radicand == 0);

    auto s2 = sum_of_two_squares(P("w^2 + 1"));
    CHECK(s2.a == P("w").in_context({"w"}));
    CHECK(s2.b == P("1").in_context({"w"}));

    auto s3 = sum_of_two_squares(P("2*w^2 + 2"));
    CHECK(s3.a * s3.a + s3.b * s3.b == P("2*w^2 + 2").in_context(s3.a.vars()));
    CHECK(s3.extension_radicand == 0);
    CHECK(s3.a.total_degree() == 1);
    CHECK(s3.b.total_degree() == 1);
}

TEST_CASE("sum of two squares: extensions when required") {
    auto s = sum_of_two_squares(P("w^2 + 3"));
    CHECK(s.a * s.a + s.b * s.b == P("w^2 + 3").in_context(s.a.vars()));
    CHECK(s.extension_radicand == 3);

    auto q = sum_of_two_squares(P("w^4 + 3"));
    CHECK(q.a * q.a + q.b * q.b == P("w^4 + 3").in_context(q.a.vars()));
    CHECK(q.extension_radicand == 3);

    auto prod = sum_of_two_squares(P("(w^2 + 1)*(w^2 + 2*w + 2)"));
    CHECK(prod.a * prod.a + prod.b * prod.b ==
          P("(w^2 + 1)*(w^2 + 2*w + 2)").in_context(prod.a.vars()));
    CHECK(prod.extension_radicand == 0);  // both factors split over Q(i)
}

TEST_CASE("sum of two squares: squares factor through") {
    auto s = sum_of_two_squares(P("(w^2 - 2)^2"));
    CHECK(s.a * s.a + s.b * s.b == P("(w^2 - 2)^2").in_context(s.a.vars()));
    auto t = sum_of_two_squares(P("(w - 1)^2 * (w^2 + 5)"));
    CHECK(t.a * t.a + t.b * t.b == P("(w - 1)^2 * (w^2 + 5)").in_context(t.a.vars()));
}

TEST_CASE("sum of two squares rejects sign-changing input with a witness") {
    try {
        sum_of_two_squares(P("w^2 - 1"));
        FAIL("expected NotNonnegative");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNonnegative);
        CHECK(std::string(e.what()).find("w = ") != std::string::npos);
    }
    CHECK_THROWS_AS(sum_of_two_squares(P("0 - w^2")), Error);
    CHECK_THROWS_AS(sum_of_two_squares(P("w^3")), Error);
}

TEST_CASE("sum of two squares on randomized certified-nonnegative inputs") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> small(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        auto rnd_poly = [&](int deg) {
            MPoly p(std::vector<std::string>{"w"});
            for (int k = 0; k <= deg; ++k) p.insert_term({k}, Scalar(small(rng)));
            if (p.is_zero()) p = parse_poly("w + 1", {"w"});
            return p;
        };
        MPoly a = rnd_poly(2), b = rnd_poly(2);
        MPoly p = a * a + b * b;
        if (p.is_zero()) continue;
        auto s = sum_of_two_squares(p);
        CHECK(s.a * s.a + s.b * s.b == p.in_context(s.a.vars()));
    }
}

TEST_SUITE_END();
