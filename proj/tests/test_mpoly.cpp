#include <doctest.h>

#include <random>

#include "cb/parse.hpp"
#include "cb/ratfunc.hpp"

using namespace cb;

namespace {

MPoly P(const std::string& text) { return parse_poly(text); }

MPoly P(const std::string& text, const std::vector<std::string>& vars) {
    return parse_poly(text, vars);
}

}  // namespace

TEST_SUITE_BEGIN("mpoly");

TEST_CASE("construction and canonical form") {
    MPoly p = P("(v^2+w^2)^2 - v^2 + w^2");
    CHECK(p.total_degree() == 4);
    CHECK(p.terms().size() == 5);
    CHECK(p.to_string() == "v^4 + 2*v^2*w^2 + w^4 - v^2 + w^2");
    CHECK(P("v - v").is_zero());
    CHECK(P("0").to_string() == "0");
    CHECK(P("v*w - w*v", {"v", "w"}).is_zero());
}

TEST_CASE("arith basics and degree bookkeeping") {
    MPoly a = P("v^2 - w^2", {"v", "w"});
    MPoly b = P("v + w", {"v", "w"});
    CHECK(a * b == P("v^3 + v^2*w - v*w^2 - w^3", {"v", "w"}));
    CHECK(a.degree_in("v") == 2);
    CHECK(a.derivative("v") == P("2*v", {"v", "w"}));
    CHECK(P("v^2+v+1").set_vars({{"v", Scalar(2)}}).constant_value() == Scalar(7));
    CHECK(P("(v+w)^7").eval({{"v", Scalar(1)}, {"w", Scalar(1)}}) == Scalar(128));
}

TEST_CASE("gcd finds common factors") {
    CHECK(poly_gcd(P("v^2 - w^2", {"v", "w"}), P("v - w", {"v", "w"})) == P("v - w", {"v", "w"}));
    CHECK(poly_gcd(P("v^2 + w^2", {"v", "w"}), P("v - w", {"v", "w"})).is_constant());
    MPoly f = P("(v + w)^2 * (v - 2*w)", {"v", "w"});
    MPoly g = P("(v + w) * (v + 3*w)", {"v", "w"});
    CHECK(poly_gcd(f, g) == P("v + w", {"v", "w"}));
    // gcd is monic even when inputs are scaled
    CHECK(poly_gcd(P("2*v - 2*w", {"v", "w"}), P("4*v - 4*w", {"v", "w"})) ==
          P("v - w", {"v", "w"}));
}

TEST_CASE("resultant eliminates the named variable") {
    MPoly r = resultant(P("v^2 + w^2", {"v", "w"}), P("v - w", {"v", "w"}), "v");
    CHECK(r == P("2*w^2", {"v", "w"}));
    // resultant of the lemniscate's partials must vanish at singular v-values
    MPoly f = P("(v^2+w^2)^2 - v^2 + w^2", {"v", "w"});
    MPoly res = resultant(f.derivative("v"), f.derivative("w"), "w");
    CHECK(res.is_univariate_in("v"));
    CHECK(res.set_vars({{"v", Scalar(0)}}).is_zero());
    // constant cases
    CHECK(resultant(P("3", {"v"}), P("v^2+1", {"v"}), "v") == P("9", {"v"}));
}

TEST_CASE("pseudo division reduces powers of the main variable") {
    std::vector<std::string> vars{"x", "y", "f"};
    auto pd = pseudo_divmod(P("x^4", vars), P("x^2 + y^2 - f", vars), "x");
    CHECK(pd.remainder == P("(f - y^2)^2", vars));
    // recombination: lc^k * f == q*g + r
    MPoly lhs = P("x^4", vars);
    for (int i = 0; i < pd.power; ++i) lhs *= P("1", vars);
    CHECK(lhs == pd.quotient * P("x^2 + y^2 - f", vars) + pd.remainder);
}

TEST_CASE("pseudo division recombination on random inputs") {
    std::mt19937 rng(999);
    std::uniform_int_distribution<int> c(-4, 4), e(0, 3);
    std::vector<std::string> vars{"x", "y"};
    for (int trial = 0; trial < 200; ++trial) {
        MPoly f(vars), g(vars);
        for (int t = 0; t < 5; ++t) {
            f.insert_term({e(rng), e(rng)}, Scalar(c(rng)));
            g.insert_term({e(rng) % 2, e(rng)}, Scalar(c(rng)));
        }
        if (g.is_zero()) continue;
        auto pd = pseudo_divmod(f, g, "x");
        MPoly lc = g.coeffs_in("x").back();
        MPoly lhs = f;
        for (int i = 0; i < pd.power; ++i) lhs *= lc;
        CHECK(lhs == pd.quotient * g + pd.remainder);
        CHECK(pd.remainder.degree_in("x") < std::max(g.degree_in("x"), 1));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> c(-9, 9), e(0, 4), nt(1, 5);
    std::vector<std::string> vars{"u", "v", "w"};
    auto random_poly = [&]() {
        MPoly p(vars);
        int terms = nt(rng);
        for (int t = 0; t < terms; ++t) p.insert_term({e(rng), e(rng), e(rng)}, Scalar(c(rng)));
        return p;
    };
    for (int trial = 0; trial < 400; ++trial) {
        MPoly a = random_poly(), b = random_poly(), cc = random_poly();
        CHECK((a + b) + cc == a + (b + cc));
        CHECK(a * (b + cc) == a * b + a * cc);
        CHECK(a * b == b * a);
        CHECK(a - a == MPoly(vars));
        CHECK((a * b) * cc == a * (b * cc));
    }
}

TEST_CASE("substitute, identity and scaling cases") {
    CHECK(substitute(P("v^2 - w^2", {"v", "w"}),
                     {{"v", RatFunc::var({"w"}, "w")}})
              .is_zero());

    RatFunc inv_t(P("1", {"t"}), P("t", {"t"}));
    RatFunc r = substitute(P("u^2 + 1", {"u"}), {{"u", inv_t}});
    CHECK(r.num() == P("1 + t^2", {"t"}));
    CHECK(r.den() == P("t^2", {"t"}));

    std::vector<std::string> sv{"s", "x'", "y'", "z'"};
    std::map<std::string, RatFunc> scale;
    for (const char* v : {"x", "y", "z"})
        scale.emplace(v, RatFunc(P(std::string("s^2*") + v + "'", sv)));
    RatFunc scaled = substitute(P("x^2 + y^2 + z^2", {"x", "y", "z"}), scale);
    CHECK(scaled == RatFunc(P("s^4*(x'^2 + y'^2 + z'^2)", sv)));
}

TEST_CASE("substitute rejects unknown bound variables and vanishing denominators") {
    CHECK_THROWS_AS(substitute(P("v^2", {"v"}), {{"q", RatFunc(P("1", {"q"}))}}), Error);
    RatFunc target(P("1", {"v", "w"}), P("v - w", {"v", "w"}));
    CHECK_THROWS_AS(substitute(target, {{"v", RatFunc::var({"w"}, "w")}}), Error);
}

TEST_CASE("ratfunc normalization invariants") {
    RatFunc r(P("2*v^2 - 2*w^2", {"v", "w"}), P("4*v - 4*w", {"v", "w"}));
    CHECK(r.num() == P("1/2*v + 1/2*w", {"v", "w"}));
    CHECK(r.den() == P("1", {"v", "w"}));
    RatFunc q(P("v", {"v", "w"}), P("2*w", {"v", "w"}));
    CHECK(q.den().leading_coeff() == Scalar(1));  // monic denominator
    CHECK(q + q == RatFunc(P("v", {"v", "w"}), P("w", {"v", "w"})));
    CHECK((q - q).is_zero());
    CHECK_THROWS_AS(RatFunc(P("1", {"v"}), MPoly({"v"})), Error);
}

TEST_CASE("squarefree part") {
    MPoly p = P("(w^2+1)^2 * (w - 3)", {"w"});
    MPoly sf = make_squarefree(p, "w");
    CHECK(poly_gcd(sf, sf.derivative("w")).is_constant());
    CHECK(divide_exact(p, sf).has_value());
}

TEST_SUITE_END();
