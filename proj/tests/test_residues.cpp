#include <doctest.h>

#include <random>

#include "cb/parse.hpp"
#include "cb/residues.hpp"

using namespace cb;

TEST_SUITE_BEGIN("residues");

TEST_CASE("scaling identity holds for the sample parameters") {
    CHECK(check_scaling_identity(1, 0).pass);
    CHECK(check_scaling_identity(2, 2).pass);
    CHECK(check_scaling_identity(3, 1).pass);
}

TEST_CASE("a wrong scaling exponent leaves a witness") {
    // recreate the check with w scaled by s^{2m} instead of s^{2m-1}
    auto up = std::vector<std::string>{"s", "u'", "v'", "w'", "x'", "y'", "z'"};
    MPoly s = MPoly::variable(up, "s");
    std::map<std::string, RatFunc> sub;
    int m = 1;
    sub.emplace("x", RatFunc(s.pow(2 * m) * MPoly::variable(up, "x'")));
    sub.emplace("y", RatFunc(s.pow(2 * m) * MPoly::variable(up, "y'")));
    sub.emplace("z", RatFunc(s.pow(2 * m) * MPoly::variable(up, "z'")));
    sub.emplace("u", RatFunc(s.pow(2 * m) * MPoly::variable(up, "u'")));
    sub.emplace("w", RatFunc(s.pow(2 * m) * MPoly::variable(up, "w'")));  // wrong exponent
    sub.emplace("v", RatFunc(s.pow(2 * m - 1) * MPoly::variable(up, "v'")));
    std::vector<std::string> down{"s", "u", "v", "w", "x", "y", "z"};
    MPoly second = parse_poly("w^2 - (v + 1)*(v^2 + s^4)", down);
    RatFunc moved = substitute(second, sub);
    // the claimed factorization s^2 * (w'^2 - (s v' + 1)(v'^2 + s^2)) no longer matches
    MPoly claimed =
        s.pow(2) * parse_poly("w'^2 - (s*v' + 1)*(v'^2 + s^2)", up).in_context(up);
    CHECK(moved.num().in_context(up) != claimed);
}

TEST_CASE("valuations along the distinguished component") {
    auto spec = divisor_spec_for(1, 0);
    auto up = spec.vars;
    MPoly s = MPoly::variable(up, "s");
    MPoly su_v = s * MPoly::variable(up, "u'") + MPoly::variable(up, "v'");

    CHECK(valuation_along(s.pow(2 * 1 - 1) * su_v, spec) == 1);
    CHECK(valuation_along(s.pow(3), spec) == 3);
    CHECK(valuation_along(su_v, spec) == 0);  // cofactor restricts to v', nonzero

    auto spec2 = divisor_spec_for(2, 1);
    MPoly s2 = MPoly::variable(spec2.vars, "s");
    MPoly su_v2 = s2 * MPoly::variable(spec2.vars, "u'") + MPoly::variable(spec2.vars, "v'");
    CHECK(valuation_along(s2.pow(3) * su_v2, spec2) == 3);

    // vanishing on the component: w' - v' itself
    CHECK_THROWS_AS(valuation_along(spec.component, spec), Error);
    try {
        valuation_along(spec.component, spec);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndeterminateValuation);
    }
}

TEST_CASE("valuations add on products with unit cofactors") {
    auto spec = divisor_spec_for(1, 0);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pow_dist(0, 4), coeff(1, 5);
    auto up = spec.vars;
    MPoly s = MPoly::variable(up, "s");
    for (int trial = 0; trial < 30; ++trial) {
        MPoly a = s.pow(pow_dist(rng)) *
                  (MPoly::variable(up, "v'") * coeff(rng) + MPoly::constant(up, Scalar(coeff(rng))));
        MPoly b = s.pow(pow_dist(rng)) *
                  (MPoly::variable(up, "u'") * coeff(rng) * MPoly::variable(up, "v'") +
                   MPoly::constant(up, Scalar(coeff(rng))));
        CHECK(valuation_along(a * b, spec) == valuation_along(a, spec) + valuation_along(b, spec));
    }
}

TEST_CASE("tame residue depends only on the parity of the valuation") {
    auto spec = divisor_spec_for(1, 0);
    auto up = spec.vars;
    MPoly s = MPoly::variable(up, "s");
    MPoly unit = MPoly::variable(up, "v'") + MPoly::constant(up, Scalar(3));
    RatFunc minus_one = RatFunc::from_scalar(up, Scalar(-1));

    auto residue_of = [&](const MPoly& f) {
        SymbolTriple sym{{RatFunc(f), minus_one, minus_one}};
        return tame_residue(sym, spec);
    };
    CHECK(residue_of(s * unit).value == std::make_pair(Scalar(-1), Scalar(-1)));
    CHECK(residue_of(s.pow(2) * unit).trivial);
    CHECK(residue_of(s.pow(3) * unit).value == std::make_pair(Scalar(-1), Scalar(-1)));
    CHECK(residue_of(s.pow(4) * unit).trivial);
    CHECK(residue_of(unit).trivial);

    SymbolTriple bad{{RatFunc(s), RatFunc(unit), minus_one}};
    CHECK_THROWS_AS(tame_residue(bad, spec), Error);
}

TEST_CASE("certificates across the parameter grid") {
    for (int m = 1; m <= 3; ++m)
        for (int e = 0; e <= 2; ++e) {
            auto cert = build_certificate(m, e);
            CHECK(cert.valuation == 2 * m - 1);
            CHECK(!cert.residue.trivial);
            CHECK(cert.residue.value == std::make_pair(Scalar(-1), Scalar(-1)));
            CHECK(cert.conclusion == ResidueConclusion::NotStablyRationalOverPuiseux);
            CHECK(certificate_well_formed(cert));
            CHECK(cert.trusted_facts.size() == 4);
        }
}

TEST_CASE("a certificate with a missing trusted fact is malformed") {
    auto cert = build_certificate(1, 0);
    cert.trusted_facts.erase(cert.trusted_facts.begin());  // drop level-4
    CHECK(!certificate_well_formed(cert));
}

TEST_SUITE_END();
