#include <doctest.h>

#include "cb/constructions.hpp"
#include "cb/parse.hpp"

using namespace cb;

namespace {

std::vector<RatFunc> const_point(std::initializer_list<long> coords) {
    std::vector<RatFunc> out;
    for (long c : coords) out.push_back(RatFunc::from_scalar({}, Scalar(c)));
    return out;
}

NormalForm record(NFVariant variant, int eps, long a1, long a2, long b, long c, long d) {
    return NormalForm{variant,   eps,       Scalar(a1),           Scalar(a2), Scalar(b),
                      Scalar(c), Scalar(d), ProjChange::identity(), Scalar(1)};
}

int max_component_degree(const BirationalMap& m) {
    int deg = 0;
    for (const auto& lists : {m.forward, m.inverse})
        for (const auto& r : lists)
            deg = std::max({deg, r.num().total_degree(), r.den().total_degree()});
    return deg;
}

}  // namespace

TEST_SUITE_BEGIN("rationality");

TEST_CASE("stereographic projection of the sphere") {
    MPoly sphere = parse_poly("x^2 + y^2 + z^2 - t^2", std::vector<std::string>{"x", "y", "z", "t"});
    auto m = parametrize_quadric_with_point(sphere, {"x", "y", "z", "t"},
                                            const_point({1, 0, 0, 1}));
    CHECK(m.verified.state == VerifyState::Pass);
    CHECK(m.target.vars.size() == 2);
    CHECK(!m.target.eq.has_value());
}

TEST_CASE("point checks raise the right errors") {
    MPoly cone = parse_poly("x^2 + y^2 - z^2", std::vector<std::string>{"x", "y", "z", "t"});
    try {
        parametrize_quadric_with_point(cone, {"x", "y", "z", "t"}, const_point({0, 0, 0, 1}));
        FAIL("expected NotOnQuadric or NotSmoothPoint");
    } catch (const Error& e) {
        // (0,0,0,1) satisfies the equation but the fiber gradient vanishes there
        CHECK(e.code() == ErrorCode::NotSmoothPoint);
    }
    try {
        parametrize_quadric_with_point(cone, {"x", "y", "z", "t"}, const_point({1, 1, 1, 1}));
        FAIL("expected NotOnQuadric");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotOnQuadric);
    }
}

TEST_CASE("quadric over a function field base") {
    // x^2 + y^2 - (w^2+1) z^2 - (w^4+1) t^2 with section (w, 1, 1, 0)
    std::vector<std::string> fiber{"x", "y", "z", "t"};
    auto ctx = merged_vars(fiber, {"w"});
    MPoly form = parse_poly("x^2 + y^2 - (w^2+1)*z^2 - (w^4+1)*t^2", ctx);
    std::vector<RatFunc> point{RatFunc(parse_poly("w", {"w"})), RatFunc::from_scalar({"w"}, Scalar(1)),
                               RatFunc::from_scalar({"w"}, Scalar(1)),
                               RatFunc::from_scalar({"w"}, Scalar(0))};
    auto m = parametrize_quadric_with_point(form, fiber, point);
    CHECK(m.verified.state == VerifyState::Pass);
    CHECK(m.target.vars.back() == "w");  // base passes through
}

TEST_CASE("case (a) triples") {
    auto m1 = construct_case_a(parse_poly("w^2", {"w"}), MPoly({"w"}), parse_poly("1", {"w"}));
    CHECK(m1.verified.state == VerifyState::Pass);

    auto m2 = construct_case_a(parse_poly("1", {"w"}), MPoly({"w"}), parse_poly("1", {"w"}));
    CHECK(m2.verified.state == VerifyState::Pass);

    try {
        construct_case_a(parse_poly("0 - 1", {"w"}), MPoly({"w"}), MPoly({"w"}));
        FAIL("expected NotNonnegative");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNonnegative);
    }
}

TEST_CASE("case (b) all-real-node records") {
    auto m1 = construct_case_b(record(NFVariant::F1, 1, 1, 1, 0, 0, 1));
    CHECK(m1.verified.state == VerifyState::Pass);
    CHECK(max_component_degree(m1) <= 64);

    auto m2 = construct_case_b(record(NFVariant::F1, 1, 2, 1, 1, 0, 0));
    CHECK(m2.verified.state == VerifyState::Pass);
    CHECK(max_component_degree(m2) <= 64);

    auto m3 = construct_case_b(record(NFVariant::F1, -1, 1, -1, 0, 0, 1));
    CHECK(m3.verified.state == VerifyState::Pass);

    try {
        construct_case_b(record(NFVariant::F1, 1, 0, 1, 0, 0, 1));
        FAIL("expected PrecondViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecondViolated);
    }
}

TEST_CASE("records whose threefold has an isolated real locus are refused") {
    // with eps = -1, a1 = 2, a2 = 1 the terminal bundle reads
    // w^2 + (v^2+1)(x^2+y^2) + 7/4 v^2 + 2 = 0 and has no real points at all,
    // so the smooth-real-point hypothesis fails and the search must say so
    try {
        construct_case_b(record(NFVariant::F1, -1, 2, 1, 1, 0, 0));
        FAIL("expected NoSmoothPointFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSmoothPointFound);
    }
}

TEST_CASE("case (c) conjugate-pair records") {
    // lemniscate: q1 = v^2 - 1 changes sign, branch (b)
    auto m1 = construct_case_c(record(NFVariant::F2, 1, 0, 0, -1, 1, 0));
    CHECK(m1.verified.state == VerifyState::Pass);
    CHECK(max_component_degree(m1) <= 64);

    // q = v^2 + 1 keeps its sign, branch (a)
    auto m2 = construct_case_c(record(NFVariant::F2, 1, 0, 0, 1, 1, 0));
    CHECK(m2.verified.state == VerifyState::Pass);

    try {
        construct_case_c(record(NFVariant::F2, 1, 1, 1, 0, 0, 0));
        FAIL("expected PrecondViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecondViolated);
    }
}

TEST_CASE("elem2 branches") {
    std::vector<std::string> vctx{"v"};
    MPoly v = MPoly::variable(vctx, "v");

    // q1 = v, a = 0, l3 = 1: sign change with l4 of degree one
    auto m1 = elem2_parametrize(v, Scalar(0), parse_poly("1", vctx), {"w", "x", "y", "v"});
    CHECK(m1.verified.state == VerifyState::Pass);

    // q1 = v, a = 1, l3 = 0: the solve-base step inverts u = -w'^2/(x^2+y^2+1)
    auto m2 = elem2_parametrize(v, Scalar(1), MPoly(vctx), {"w", "x", "y", "v"});
    CHECK(m2.verified.state == VerifyState::Pass);
    bool found = false;
    for (const auto& step : m2.steps) {
        if (step.name != "solve-base") continue;
        for (const auto& [var, value] : step.inverse_bindings)
            if (var != "w'" && !value.is_polynomial()) {
                std::vector<std::string> av{"w'", "x", "y"};
                MPoly wv = MPoly::variable(av, "w'"), xv = MPoly::variable(av, "x"),
                      yv = MPoly::variable(av, "y");
                RatFunc expected(-(wv * wv), xv * xv + yv * yv + MPoly::constant(av, Scalar(1)));
                CHECK(value.in_context(av) == expected);
                found = true;
            }
    }
    CHECK(found);

    // constant-sign q1 with a point search
    auto m3 = elem2_parametrize(parse_poly("v^2 + 1", vctx), Scalar(-1),
                                parse_poly("v", vctx), {"w", "x", "y", "v"});
    CHECK(m3.verified.state == VerifyState::Pass);
}

TEST_CASE("brauer-obstructed shape is rejected") {
    std::vector<std::string> uctx{"u"};
    MPoly q1 = -MPoly::variable(uctx, "u");
    MPoly q2 = parse_poly("u^2 + 1", uctx);
    try {
        resolve_elem2_shape(q1, q2, "u");
        FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HypothesisViolated);
    }
    // the solvable variant passes: q2 = -q1 - 0^2 for q2 = u
    auto shape = resolve_elem2_shape(q1, -q1 * Scalar(3), "u");
    CHECK(shape.a == Scalar(-3));
    CHECK(shape.l3.is_zero());
}

TEST_CASE("verification fails loudly on corrupted maps") {
    auto m = construct_case_a(parse_poly("w^2", {"w"}), MPoly({"w"}), parse_poly("1", {"w"}));
    REQUIRE(m.verified.state == VerifyState::Pass);
    BirationalMap broken = m;
    broken.forward[0] = broken.forward[0] + RatFunc::from_scalar(broken.source.vars, Scalar(1));
    auto result = verify_parametrization(broken);
    CHECK(result.state == VerifyState::Fail);
    REQUIRE(result.witness.has_value());
    CHECK(!result.witness->is_zero());
}

TEST_CASE("composition laws") {
    auto m = construct_case_a(parse_poly("1", {"w"}), MPoly({"w"}), parse_poly("1", {"w"}));
    auto id_target = identity_map(m.target);
    auto composed = compose(m, id_target);
    CHECK(composed.verified.state == VerifyState::Unverified);
    for (std::size_t i = 0; i < composed.forward.size(); ++i)
        CHECK(composed.forward[i] == m.forward[i]);
    auto again = verify_parametrization(composed);
    CHECK(again.state == VerifyState::Pass);

    // verification is stable under permutations of the target coordinates
    std::vector<std::string> permuted{m.target.vars[2], m.target.vars[0], m.target.vars[1]};
    auto perm = coordinate_permutation(m.target, permuted);
    auto swapped = compose(m, perm);
    CHECK(verify_parametrization(swapped).state == VerifyState::Pass);

    CHECK_THROWS_AS(compose(m, m), Error);  // chart mismatch
}

TEST_CASE("two-step chains collapse to single substitutions") {
    // w1-shift then multiply-by-q equals the single-shot composite
    auto m = construct_case_b(record(NFVariant::F1, 1, 1, 1, 2, 0, 1));
    REQUIRE(m.verified.state == VerifyState::Pass);
    CHECK(m.steps.size() >= 3);
    CHECK(m.steps[0].name == "w1-shift");
    CHECK(m.steps[1].name == "multiply-by-q");
}

TEST_SUITE_END();
