#include "cb/residues.hpp"

#include <algorithm>

namespace cb {

namespace {

const std::vector<std::string>& downstairs_vars() {
    static const std::vector<std::string> vars{"s", "u", "v", "w", "x", "y", "z"};
    return vars;
}

const std::vector<std::string>& upstairs_vars() {
    static const std::vector<std::string> vars{"s", "u'", "v'", "w'", "x'", "y'", "z'"};
    return vars;
}

MPoly var_of(const std::vector<std::string>& ctx, const std::string& name) {
    return MPoly::variable(ctx, name);
}

// (u - 1)(u^2 + s^{4m}) prod_j (j u^2 + 1) and friends
std::vector<MPoly> equ1_relations(int m, int e) {
    const auto& ctx = downstairs_vars();
    MPoly s = var_of(ctx, "s"), u = var_of(ctx, "u"), v = var_of(ctx, "v"), w = var_of(ctx, "w");
    MPoly x = var_of(ctx, "x"), y = var_of(ctx, "y"), z = var_of(ctx, "z");
    MPoly one = MPoly::constant(ctx, Scalar(1));
    MPoly s4m = s.pow(4 * m);
    MPoly rhs1 = (u - one) * (u * u + s4m);
    MPoly rhs2 = (v + one) * (v * v + s4m);
    for (int j = 1; j <= e; ++j) {
        rhs1 *= u * u * Scalar(j) + one;
        rhs2 *= v * v * Scalar(j) + one;
    }
    return {x * x + y * y + z * z - rhs1, w * w - rhs2};
}

std::vector<MPoly> equ2_relations(int m, int e) {
    const auto& ctx = upstairs_vars();
    MPoly s = var_of(ctx, "s"), u = var_of(ctx, "u'"), v = var_of(ctx, "v'"),
          w = var_of(ctx, "w'");
    MPoly x = var_of(ctx, "x'"), y = var_of(ctx, "y'"), z = var_of(ctx, "z'");
    MPoly one = MPoly::constant(ctx, Scalar(1));
    MPoly rhs1 = (s.pow(2 * m) * u - one) * (u * u + one);
    MPoly rhs2 = (s.pow(2 * m - 1) * v + one) * (v * v + s * s);
    for (int j = 1; j <= e; ++j) {
        rhs1 *= s.pow(4 * m) * u * u * Scalar(j) + one;
        rhs2 *= s.pow(4 * m - 2) * v * v * Scalar(j) + one;
    }
    return {x * x + y * y + z * z - rhs1, w * w - rhs2};
}

std::map<std::string, RatFunc> scaling_substitution(int m) {
    const auto& up = upstairs_vars();
    std::map<std::string, RatFunc> sub;
    MPoly s = var_of(up, "s");
    sub.emplace("x", RatFunc(s.pow(2 * m) * var_of(up, "x'")));
    sub.emplace("y", RatFunc(s.pow(2 * m) * var_of(up, "y'")));
    sub.emplace("z", RatFunc(s.pow(2 * m) * var_of(up, "z'")));
    sub.emplace("u", RatFunc(s.pow(2 * m) * var_of(up, "u'")));
    sub.emplace("w", RatFunc(s.pow(2 * m - 1) * var_of(up, "w'")));
    sub.emplace("v", RatFunc(s.pow(2 * m - 1) * var_of(up, "v'")));
    sub.emplace("s", RatFunc::var(up, "s"));
    return sub;
}

// squarefree part with respect to every variable (the class modulo squares)
MPoly strip_squares(const MPoly& p) {
    if (p.is_zero() || p.is_constant()) return p;
    MPoly g = p;
    MPoly current = p;
    for (const auto& v : p.vars()) {
        if (current.degree_in(v) == 0) continue;
        g = poly_gcd(current, current.derivative(v));
        if (!g.is_constant()) {
            auto q = divide_exact(current, g.in_context(current.vars()));
            if (q) current = *q;
        }
    }
    return current;
}

}  // namespace

SymbolTriple SymbolTriple::of(const RatFunc& f, const RatFunc& g, const RatFunc& h) {
    for (const RatFunc* entry : {&f, &g, &h})
        if (entry->is_zero())
            fail(ErrorCode::PrecondViolated, "symbol entries must be nonzero");
    auto canonical = [](const RatFunc& r) {
        // modulo squares, num/den ~ num*den
        MPoly rep = strip_squares(r.num() * r.den());
        return RatFunc(rep);
    };
    return SymbolTriple{{canonical(f), canonical(g), canonical(h)}};
}

DivisorSpec divisor_spec_for(int m, int e) {
    if (m < 1 || e < 0) fail(ErrorCode::PrecondViolated, "need m >= 1 and e >= 0");
    DivisorSpec spec;
    spec.vars = upstairs_vars();
    spec.ambient_relations = equ2_relations(m, e);
    spec.uniformizer = "s";
    MPoly w = var_of(spec.vars, "w'"), v = var_of(spec.vars, "v'");
    spec.component = w - v;
    MPoly x = var_of(spec.vars, "x'"), y = var_of(spec.vars, "y'"), z = var_of(spec.vars, "z'"),
          u = var_of(spec.vars, "u'");
    spec.residue_relations = {x * x + y * y + z * z + u * u + MPoly::constant(spec.vars, Scalar(1)),
                              spec.component};
    // the special fiber of the second relation splits into the two components
    MPoly fiber = spec.ambient_relations[1].set_vars({{"s", Scalar(0)}});
    if (fiber != spec.component * (w + v))
        fail(ErrorCode::Internal, "special fiber does not split into the two components");
    return spec;
}

ScalingCheck check_scaling_identity(int m, int e) {
    if (m < 1 || e < 0) fail(ErrorCode::PrecondViolated, "need m >= 1 and e >= 0");
    auto downstairs = equ1_relations(m, e);
    auto upstairs = equ2_relations(m, e);
    auto sub = scaling_substitution(m);
    MPoly s = var_of(upstairs_vars(), "s");
    const std::array<int, 2> powers{4 * m, 4 * m - 2};
    for (int i = 0; i < 2; ++i) {
        RatFunc moved = substitute(downstairs[static_cast<std::size_t>(i)], sub);
        if (!moved.is_polynomial())
            return {false, moved.den()};
        MPoly difference =
            moved.num().in_context(upstairs_vars()) -
            s.pow(powers[static_cast<std::size_t>(i)]) * upstairs[static_cast<std::size_t>(i)];
        if (!difference.is_zero()) return {false, difference};
    }
    return {true, MPoly(upstairs_vars())};
}

int valuation_along(const MPoly& h, const DivisorSpec& spec) {
    if (h.is_zero()) fail(ErrorCode::DivisionByZero, "valuation of zero");
    MPoly p = h.in_context(merged_vars(h.vars(), spec.vars));
    int suni = p.var_index(spec.uniformizer);
    int val = -1;
    for (const auto& [exps, coeff] : p.terms()) {
        int k = exps[static_cast<std::size_t>(suni)];
        if (val < 0 || k < val) val = k;
    }
    // cofactor h / s^val, restricted to the component
    MPoly cofactor(p.vars());
    for (const auto& [exps, coeff] : p.terms()) {
        Expvec e = exps;
        e[static_cast<std::size_t>(suni)] -= val;
        cofactor.insert_term(std::move(e), coeff);
    }
    MPoly on_fiber = cofactor.set_vars({{spec.uniformizer, Scalar(0)}});
    // impose w' = v'
    std::map<std::string, RatFunc> fold;
    fold.emplace("w'", RatFunc::var(spec.vars, "v'"));
    MPoly folded = substitute(on_fiber.in_context(spec.vars), fold).num().in_context(spec.vars);
    // normal form against the residue relation in its quadratic variable
    MPoly reduced = pseudo_divmod(folded, spec.residue_relations[0], "x'").remainder;
    if (reduced.is_zero())
        fail(ErrorCode::IndeterminateValuation,
             "the cofactor vanishes on the component; the valuation needs a finer model");
    return val;
}

ResidueSymbol tame_residue(const SymbolTriple& symbol, const DivisorSpec& spec) {
    Scalar minus_one(-1);
    for (int i = 1; i < 3; ++i) {
        const RatFunc& entry = symbol.entries[static_cast<std::size_t>(i)];
        if (!entry.is_constant() || entry.constant_value() != minus_one)
            fail(ErrorCode::UnsupportedSymbolShape,
                 "tame residues are computed only for symbols (f, -1, -1)");
    }
    int val = valuation_along(symbol.entries[0].num(), spec) -
              valuation_along(symbol.entries[0].den(), spec);
    if (val % 2 == 0) return {true, {Scalar(1), Scalar(1)}};
    return {false, {minus_one, minus_one}};
}

ResidueCertificate build_certificate(int m, int e) {
    ResidueCertificate cert;
    cert.m = m;
    cert.e = e;
    cert.equ1_system = equ1_relations(m, e);
    cert.equ2_system = equ2_relations(m, e);
    for (const auto& [from, to] : scaling_substitution(m))
        if (from != "s") cert.substitution.emplace_back(from, to.to_string());

    auto scaling = check_scaling_identity(m, e);
    if (!scaling.pass)
        fail(ErrorCode::Internal, "scaling identity failed: " + scaling.witness.to_string());

    DivisorSpec spec = divisor_spec_for(m, e);
    // (u + v) in the rescaled coordinates: s^{2m-1} (s u' + v')
    const auto& up = upstairs_vars();
    MPoly s = var_of(up, "s");
    MPoly first = s.pow(2 * m - 1) * (s * var_of(up, "u'") + var_of(up, "v'"));
    cert.symbol = SymbolTriple{{RatFunc(first), RatFunc::from_scalar(up, Scalar(-1)),
                                RatFunc::from_scalar(up, Scalar(-1))}};
    cert.valuation = valuation_along(first, spec);
    cert.residue = tame_residue(cert.symbol, spec);

    cert.trusted_facts = {
        {"level-4",
         "the residue field is stably birational to the function field of the real anisotropic "
         "three-dimensional quadric, whose level is 4, so (-1,-1) does not vanish there",
         "Pfister, Satz 5"},
        {"unramified-membership",
         "the symbol extends to an unramified class over the base field after the shift of "
         "coordinates",
         "Colliot-Thelene--Pirutka, Theoreme 3.2"},
        {"ch0-equivalence",
         "nonvanishing of the class is equivalent to failure of universal CH0-triviality of the "
         "smooth projective models",
         "Colliot-Thelene--Pirutka, Theoreme 3.3"},
        {"puiseux-union",
         "nonvanishing over every fractional-power Laurent field passes to their union",
         "limit of Galois cohomology over the directed union"},
    };
    cert.conclusion = (cert.valuation % 2 == 1 && !cert.residue.trivial)
                          ? ResidueConclusion::NotStablyRationalOverPuiseux
                          : ResidueConclusion::Inconclusive;
    if (!certificate_well_formed(cert)) fail(ErrorCode::Internal, "certificate is inconsistent");
    return cert;
}

bool certificate_well_formed(const ResidueCertificate& cert) {
    if (cert.conclusion != ResidueConclusion::NotStablyRationalOverPuiseux) return true;
    if (cert.valuation % 2 != 1 || cert.residue.trivial) return false;
    static const std::vector<std::string> required{"level-4", "unramified-membership",
                                                   "ch0-equivalence", "puiseux-union"};
    for (const auto& tag : required) {
        bool found = false;
        for (const auto& fact : cert.trusted_facts)
            if (fact.tag == tag) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace cb
