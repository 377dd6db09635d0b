#include <doctest.h>

#include "cb/lattice.hpp"
#include "cb/parse.hpp"
#include "cb/verdict.hpp"

using namespace cb;

TEST_SUITE_BEGIN("obstructions");

TEST_CASE("canonical and discriminant classes") {
    auto model = SurfaceModel::with_nodes(12, 3);
    auto [k, delta] = canonical_and_delta(model);
    CHECK(k == DivisorClass{-3, {1, 1, 1}});
    CHECK(delta == DivisorClass{12, {-2, -2, -2}});
    auto small = SurfaceModel::with_nodes(4, 3);
    CHECK(small.canonical() == DivisorClass{-3, {1, 1, 1}});
    CHECK(small.discriminant() == DivisorClass{4, {-2, -2, -2}});
    auto conic = SurfaceModel::with_nodes(2, 0);
    CHECK(conic.canonical() == DivisorClass{-3, {}});
    CHECK(conic.discriminant() == DivisorClass{2, {}});
}

TEST_CASE("adjoint class and effectivity boundary") {
    auto [cls12, eff12] = adjoint_class(SurfaceModel::for_nodal_curve(12));
    CHECK(cls12.h == 0);
    CHECK(eff12);
    for (long c : cls12.e) CHECK(c == 2);
    CHECK(cls12.e.size() == 55);

    auto [cls4, eff4] = adjoint_class(SurfaceModel::with_nodes(4, 3));
    CHECK(cls4 == DivisorClass{-8, {2, 2, 2}});
    CHECK(!eff4);

    auto [cls14, eff14] = adjoint_class(SurfaceModel::for_nodal_curve(14));
    CHECK(cls14.h == 2);
    CHECK(eff14);
}

TEST_CASE("adjoint equals 4K + Delta componentwise across the lattice range") {
    for (int d = 2; d <= 40; d += 2)
        for (int r = 0; r <= 100; r += 10) {
            auto model = SurfaceModel::with_nodes(d, r);
            auto [cls, eff] = adjoint_class(model);
            CHECK(cls.h == d - 12);
            for (long c : cls.e) CHECK(c == 2);
            CHECK(eff == (d >= 12));
        }
}

TEST_CASE("blow-up transform appends a + 4 and preserves effectivity") {
    DivisorClass cls{0, {2, 2}};
    CHECK(blowup_transform(cls, -2).e.back() == 2);
    CHECK(blowup_transform(cls, -1).e.back() == 3);
    CHECK(blowup_transform(cls, 0).e.back() == 4);
    CHECK_THROWS_AS(blowup_transform(cls, 1), Error);
    CHECK_THROWS_AS(blowup_transform(cls, -3), Error);
    for (int a : {-2, -1, 0}) {
        DivisorClass moved = blowup_transform(cls, a);
        CHECK(is_effective(moved) == is_effective(cls));
    }
}

TEST_CASE("effectivity is only decided for the produced shapes") {
    CHECK_THROWS_AS(is_effective(DivisorClass{3, {-1}}), Error);
    try {
        is_effective(DivisorClass{3, {-1}});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UndecidedEffectivity);
    }
}

TEST_CASE("verdicts without curves") {
    ClassifyRequest req;
    req.family = Family::Eq2a;
    req.d = 12;
    auto v = classify(req);
    CHECK(v.status == VerdictStatus::NotRational);
    REQUIRE(v.adjoint.has_value());
    CHECK(v.adjoint->effective);
    CHECK(v.adjoint->model.r == 55);
    CHECK(std::find(v.citations.begin(), v.citations.end(), "th4") != v.citations.end());

    req.d = 8;
    auto open = classify(req);
    CHECK(open.status == VerdictStatus::Open);

    req.conjectural_mode = true;
    auto conj = classify(req);
    CHECK(conj.status == VerdictStatus::NotRational);
    CHECK(conj.citations[0] == "conjecture-2K");

    ClassifyRequest eq1;
    eq1.family = Family::Eq1;
    eq1.d = 6;
    auto pointer = classify(eq1);
    CHECK(pointer.status == VerdictStatus::Open);
    CHECK(pointer.certificate_ref.has_value());

    ClassifyRequest odd;
    odd.family = Family::Eq2a;
    odd.d = 7;
    CHECK_THROWS_AS(classify(odd), Error);

    ClassifyRequest bad_r;
    bad_r.family = Family::Eq2b;
    bad_r.d = 12;
    bad_r.node_count = 54;
    CHECK_THROWS_AS(classify(bad_r), Error);
}

TEST_CASE("rational verdicts attach verified maps") {
    ClassifyRequest req;
    req.family = Family::Eq2a;
    req.d = 4;
    req.curve = PlaneCurve::from(parse_poly("(v^2+w^2)^2 - (v^2-w^2)*z^2"));
    auto v = classify(req);
    CHECK(v.status == VerdictStatus::Rational);
    REQUIRE(v.map.has_value());
    CHECK(v.map->verified.state == VerifyState::Pass);

    ClassifyRequest conic;
    conic.family = Family::Eq2a;
    conic.d = 2;
    conic.curve = PlaneCurve::from(parse_poly("v^2 + w^2 - z^2"));
    auto vc = classify(conic);
    CHECK(vc.status == VerdictStatus::Rational);
    CHECK(vc.map->verified.state == VerifyState::Pass);

    ClassifyRequest anis;
    anis.family = Family::Eq2b;
    anis.d = 2;
    anis.curve = PlaneCurve::from(parse_poly("v^2 + w^2 + z^2"));
    auto va = classify(anis);
    CHECK(va.status == VerdictStatus::Rational);
    CHECK(va.map->verified.state == VerifyState::Pass);
}

TEST_SUITE_END();
