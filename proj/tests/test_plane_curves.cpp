#include <doctest.h>

#include <random>

#include "cb/parse.hpp"
#include "cb/plane_curves.hpp"
#include "cb/ratfunc.hpp"

using namespace cb;

namespace {
PlaneCurve curve(const std::string& text) { return PlaneCurve::from(parse_poly(text)); }

const std::string kLemniscate = "(v^2+w^2)^2 - (v^2-w^2)*z^2";
}

TEST_SUITE_BEGIN("plane_curves");

TEST_CASE("lemniscate quartic: one real node and a conjugate pair") {
    auto recs = singular_points(curve(kLemniscate));
    REQUIRE(recs.size() == 2);
    const auto& real_node = recs[0];
    CHECK(!real_node.conjugate_pair);
    CHECK(real_node.coords[0] == Scalar(0));
    CHECK(real_node.coords[1] == Scalar(0));
    CHECK(real_node.coords[2] == Scalar(1));
    CHECK(real_node.kind == SingKind::Node);

    const auto& pair = recs[1];
    CHECK(pair.conjugate_pair);
    CHECK(pair.kind == SingKind::Node);
    // the pair lives on the line at infinity: [1 : +-i : 0] up to scale
    CHECK(pair.coords[2].is_zero());

    // oracle: every returned point annihilates F and all three partials
    MPoly F = curve(kLemniscate).poly;
    for (const auto& rec : recs) {
        CHECK(eval_curve(F, rec.coords[0], rec.coords[1], rec.coords[2]).is_zero());
        for (const char* var : {"v", "w", "z"})
            CHECK(eval_curve(F.derivative(var), rec.coords[0], rec.coords[1], rec.coords[2])
                      .is_zero());
    }
}

TEST_CASE("smooth curves have no singular points") {
    CHECK(singular_points(curve("v^2 + w^2 - z^2")).empty());
    CHECK(singular_points(curve("v^4 + w^4 + z^4")).empty());
}

TEST_CASE("double conic is rejected as non-reduced") {
    try {
        singular_points(curve("(v^2 + w^2 - z^2)^2"));
        FAIL("expected NotReduced");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotReduced);
    }
}

TEST_CASE("node classification matches tangent cone rank") {
    // lemniscate at the origin chart: quadratic part -v^2 + w^2, rank 2
    CHECK(classify_singularity(curve(kLemniscate), {Scalar(0), Scalar(0), Scalar(1)}) ==
          SingKind::Node);
    // cuspidal cubic w^2 z - v^3 at [0:0:1]: quadratic part w^2, rank 1
    CHECK(classify_singularity(curve("w^2*z - v^3"), {Scalar(0), Scalar(0), Scalar(1)}) ==
          SingKind::NotNode);
    CHECK_THROWS_AS(
        classify_singularity(curve("v^2 + w^2 - z^2"), {Scalar(1), Scalar(0), Scalar(1)}), Error);
}

TEST_CASE("classification is invariant under projective changes") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-3, 3);
    MPoly F = curve(kLemniscate).poly;
    for (int trial = 0; trial < 12; ++trial) {
        // random invertible integer matrix acting on [v:w:z]
        std::array<std::array<int, 3>, 3> m;
        long det = 0;
        do {
            for (auto& row : m)
                for (auto& x : row) x = entry(rng);
            det = 0;
            det += static_cast<long>(m[0][0]) * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
            det -= static_cast<long>(m[0][1]) * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
            det += static_cast<long>(m[0][2]) * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        } while (det == 0);
        auto vars = PlaneCurve::standard_vars();
        std::map<std::string, RatFunc> sub;
        for (int i = 0; i < 3; ++i) {
            MPoly row(vars);
            for (int j = 0; j < 3; ++j)
                row += MPoly::variable(vars, vars[static_cast<std::size_t>(j)]) *
                       Scalar(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            sub.emplace(vars[static_cast<std::size_t>(i)], RatFunc(row));
        }
        MPoly transformed = substitute(F, sub).num();
        PlaneCurve moved = PlaneCurve::from(transformed);
        // the node [0:0:1] of the original pulls back: transformed(p) uses T*p
        // so the singular point of `moved` is T^-1 * (0,0,1)... easier: verify all
        // singular points of the moved curve are nodes again
        auto recs = singular_points(moved);
        CHECK(recs.size() == 2);
        for (const auto& rec : recs) CHECK(rec.kind == SingKind::Node);
    }
}

TEST_CASE("profile of the lemniscate") {
    auto profile = curve_profile(curve(kLemniscate));
    CHECK(profile.degree == 4);
    CHECK(profile.node_count_over_closure == 3);
    CHECK(profile.real_node_count == 1);
    REQUIRE(profile.genus.has_value());
    CHECK(*profile.genus == 0);
    CHECK(!profile.collinear_nodes);
    CHECK(profile.irreducible == Flag::Yes);
    CHECK(profile.real_branch == Flag::Yes);   // crunode at the origin
    CHECK(profile.nonnegative_f == Flag::No);  // f is negative inside the left lobe
}

TEST_CASE("profiles of smooth curves") {
    auto quartic = curve_profile(curve("v^4 + w^4 + z^4"));
    CHECK(quartic.node_count_over_closure == 0);
    CHECK(*quartic.genus == 3);
    CHECK(quartic.irreducible == Flag::Yes);
    CHECK(quartic.nonnegative_f == Flag::Yes);

    auto conic = curve_profile(curve("v^2 + w^2 - z^2"));
    CHECK(*conic.genus == 0);
    CHECK(conic.real_branch == Flag::Yes);  // the circle is full of real points
}

TEST_CASE("all-real trinodal quartic with nodes at the coordinate points") {
    // f1-shaped: v^2 w^2 - v^2 z^2 - w^2 z^2 + v w z^2
    auto profile = curve_profile(curve("v^2*w^2 - v^2*z^2 - w^2*z^2 + v*w*z^2"));
    CHECK(profile.node_count_over_closure == 3);
    CHECK(profile.real_node_count == 3);
    CHECK(*profile.genus == 0);
    CHECK(!profile.collinear_nodes);
    CHECK(profile.irreducible == Flag::Yes);
    for (const auto& rec : profile.nodes) CHECK(rec.kind == SingKind::Node);
}

TEST_CASE("irrational real nodes within one quadratic extension") {
    // nodes at [+-sqrt(2):0:1] and [0:1:0]
    // built as a product-of-tangents style quartic with those singular points
    MPoly F = parse_poly("(v^2 - 2*z^2)^2 - w^3*z - w^2*z^2");
    auto recs = singular_points(PlaneCurve::from(F));
    bool has_sqrt2 = false;
    for (const auto& rec : recs)
        if (!rec.coords[0].is_rational() && rec.coords[0].is_real()) has_sqrt2 = true;
    CHECK(has_sqrt2);
}

TEST_CASE("cubic-field singular points are refused") {
    // singular where v^3 = 2z^3 and w = 0, so the coordinate v/z is a cube root
    MPoly F = parse_poly("(v^3 - 2*z^3)^2 - w^5*z");
    try {
        singular_points(PlaneCurve::from(F));
        FAIL("expected UnsupportedNodeField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedNodeField);
    }
}

TEST_SUITE_END();
