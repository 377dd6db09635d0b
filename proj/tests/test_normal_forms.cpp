#include <doctest.h>

#include <random>

#include "cb/normal_forms.hpp"
#include "cb/parse.hpp"

using namespace cb;

namespace {

PlaneCurve curve(const std::string& text) { return PlaneCurve::from(parse_poly(text)); }

const std::string kLemniscate = "(v^2+w^2)^2 - (v^2-w^2)*z^2";

MPoly apply_scaled(const NormalForm& nf, const PlaneCurve& source) {
    // change(source) should equal scale * template
    return nf.change.apply_to_curve(source.poly);
}

}  // namespace

TEST_SUITE_BEGIN("normal_forms");

TEST_CASE("lemniscate standardizes with the identity and extracts F2") {
    PlaneCurve C = curve(kLemniscate);
    auto profile = curve_profile(C);
    auto [change, moved] = standardize(C, profile);
    CHECK(moved.poly == C.poly);

    NormalForm nf = extract_normal_form(moved);
    CHECK(nf.variant == NFVariant::F2);
    CHECK(nf.epsilon == 1);
    CHECK(nf.a1 == Scalar(0));
    CHECK(nf.a2 == Scalar(0));
    CHECK(nf.b == Scalar(-1));
    CHECK(nf.c == Scalar(1));
    CHECK(nf.d == Scalar(0));
    CHECK(nf.scale == Scalar(1));
}

TEST_CASE("standard-position real nodes give the identity change") {
    PlaneCurve C = curve("v^2*w^2 - v^2*z^2 - w^2*z^2 + v*w*z^2");
    auto profile = curve_profile(C);
    auto [change, moved] = standardize(C, profile);
    // nodes are already the coordinate points; the sorted assignment may permute
    for (const auto& rec : singular_points(moved)) {
        int zeros = 0;
        for (const auto& c : rec.coords)
            if (c.is_zero()) ++zeros;
        CHECK(zeros == 2);
        CHECK(rec.kind == SingKind::Node);
    }
    NormalForm nf = extract_normal_form(moved);
    CHECK(nf.variant == NFVariant::F1);
    CHECK(!nf.a1.is_zero());
    CHECK(!nf.a2.is_zero());
    // full record round-trip against the standardized curve
    MPoly lhs = nf.change.apply_to_curve(moved.poly);
    MPoly rhs = instantiate_normal_form(nf.variant, nf.epsilon, nf.a1, nf.a2, nf.b, nf.c, nf.d) *
                nf.scale;
    CHECK(lhs == rhs.in_context(lhs.vars()));
}

TEST_CASE("moved real nodes are sent back to the coordinate points") {
    // nodes at [1:0:0], [0:1:0], [1:1:1]
    // built by pulling the standard F1 curve through the map fixing e1, e2 and
    // sending [0:0:1] to [1:1:1]
    PlaneCurve base = curve("v^2*w^2 - v^2*z^2 - w^2*z^2 + v*w*z^2");
    ProjChange::Mat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = Scalar(i == j ? 1 : 0);
    m[0][2] = Scalar(1);
    m[1][2] = Scalar(1);  // matrix sends [0:0:1] to [1:1:1]
    ProjChange push = ProjChange::from_matrix(m);
    MPoly movedF = push.apply_to_curve(base.poly);
    PlaneCurve C = PlaneCurve::from(movedF);

    auto profile = curve_profile(C);
    CHECK(profile.real_node_count == 3);
    auto [change, standardized] = standardize(C, profile);
    for (const auto& rec : singular_points(standardized)) {
        int zeros = 0;
        for (const auto& c : rec.coords)
            if (c.is_zero()) ++zeros;
        CHECK(zeros == 2);
    }
    NormalForm nf = to_normal_form(C, profile);
    // round-trip: change(source) == scale * template
    MPoly lhs = apply_scaled(nf, C);
    MPoly rhs = instantiate_normal_form(nf.variant, nf.epsilon, nf.a1, nf.a2, nf.b, nf.c, nf.d) *
                nf.scale;
    CHECK(lhs == rhs.in_context(lhs.vars()));
}

TEST_CASE("conjugate pair off standard position is transported") {
    // pull the lemniscate through a rational projective change
    ProjChange::Mat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = Scalar(i == j ? 1 : 0);
    m[0][1] = Scalar(2);
    m[2][0] = Scalar(1);  // mixes all three coordinates
    ProjChange push = ProjChange::from_matrix(m);
    PlaneCurve C = PlaneCurve::from(push.apply_to_curve(parse_poly(kLemniscate)));

    auto profile = curve_profile(C);
    CHECK(profile.real_node_count == 1);
    CHECK(profile.node_count_over_closure == 3);

    NormalForm nf = to_normal_form(C, profile);
    CHECK(nf.variant == NFVariant::F2);
    MPoly lhs = apply_scaled(nf, C);
    MPoly rhs = instantiate_normal_form(nf.variant, nf.epsilon, nf.a1, nf.a2, nf.b, nf.c, nf.d) *
                nf.scale;
    CHECK(lhs == rhs.in_context(lhs.vars()));
}

TEST_CASE("template instantiation round-trips through extraction") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> small(-4, 4);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int eps = (trial % 2 == 0) ? 1 : -1;
        Scalar a1(small(rng)), a2(small(rng)), b(small(rng)), c(small(rng)), d(small(rng));
        NFVariant variant = (trial % 3 == 0) ? NFVariant::F2 : NFVariant::F1;
        if (variant == NFVariant::F1 && (a1.is_zero() || a2.is_zero())) continue;
        MPoly F = instantiate_normal_form(variant, eps, a1, a2, b, c, d);
        if (F.is_zero()) continue;
        NormalForm nf = extract_normal_form(PlaneCurve::from(F));
        CHECK(nf.variant == variant);
        CHECK(nf.epsilon == eps);
        CHECK(nf.a1 == a1);
        CHECK(nf.a2 == a2);
        CHECK(nf.b == b);
        CHECK(nf.c == c);
        CHECK(nf.d == d);
        CHECK(nf.scale == Scalar(1));
        CHECK(nf.change.is_identity());
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("scaling is absorbed with its sign in epsilon") {
    MPoly F = instantiate_normal_form(NFVariant::F1, 1, Scalar(1), Scalar(2), Scalar(0), Scalar(1),
                                      Scalar(0)) *
              Scalar(-6);
    NormalForm nf = extract_normal_form(PlaneCurve::from(F));
    CHECK(nf.epsilon == -1);
    CHECK(nf.scale == Scalar(6));
    CHECK(nf.a1 == Scalar(-1));  // -6*(-a1) = 6*a1... record refits the template
}

TEST_CASE("misplaced singularities are rejected") {
    // cuspidal quartic at the origin: forbidden monomials survive
    CHECK_THROWS_AS(extract_normal_form(curve("v^3*z - w^4")), Error);
    try {
        extract_normal_form(curve("v^4 + w^4 + z^4"));
        FAIL("expected TemplateMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TemplateMismatch);
    }
}

TEST_SUITE_END();
