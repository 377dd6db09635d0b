#include "cb/birational.hpp"

#include <algorithm>
#include <sstream>

namespace cb {

Hypersurface Hypersurface::affine_space(std::vector<std::string> vars) {
    Hypersurface h;
    h.vars = std::move(vars);
    return h;
}

Hypersurface Hypersurface::of(std::vector<std::string> vars, MPoly eq, std::string reduction_var) {
    Hypersurface h;
    h.vars = std::move(vars);
    if (eq.is_zero()) fail(ErrorCode::DivisionByZero, "hypersurface with zero equation");
    h.eq = eq.in_context(h.vars);
    if (std::find(h.vars.begin(), h.vars.end(), reduction_var) == h.vars.end())
        fail(ErrorCode::VariableMismatch, "reduction variable not among coordinates");
    if (h.eq->degree_in(reduction_var) < 1)
        fail(ErrorCode::VariableMismatch, "reduction variable does not appear in the equation");
    h.reduction_var = std::move(reduction_var);
    return h;
}

bool Hypersurface::operator==(const Hypersurface& o) const {
    if (vars != o.vars) return false;
    if (eq.has_value() != o.eq.has_value()) return false;
    if (eq && !(*eq == *o.eq)) return false;
    return true;
}

MPoly reduce_mod(const MPoly& p, const Hypersurface& h) {
    if (!h.eq) return p;
    std::string var = h.reduction_var ? *h.reduction_var : h.eq->vars().front();
    MPoly target = p.in_context(merged_vars(p.vars(), h.eq->vars()));
    return pseudo_divmod(target, h.eq->in_context(target.vars()), var).remainder;
}

namespace {

// Unreduced fraction arithmetic: verification avoids gcd entirely; only the
// final residues are reduced modulo the hypersurface equations.
struct Frac {
    MPoly num, den;
};

Frac frac_substitute(const MPoly& target, const std::vector<std::string>& source_vars,
                     const std::vector<Frac>& values, const std::vector<std::string>& out_ctx) {
    MPoly t = target.in_context(source_vars);
    const std::size_t n = source_vars.size();
    std::vector<int> maxdeg(n, 0);
    for (std::size_t i = 0; i < n; ++i) maxdeg[i] = t.degree_in(source_vars[i]);
    std::vector<std::vector<MPoly>> npow(n), dpow(n);
    MPoly one = MPoly::constant(out_ctx, Scalar(1));
    for (std::size_t i = 0; i < n; ++i) {
        npow[i].push_back(one);
        dpow[i].push_back(one);
        for (int k = 1; k <= maxdeg[i]; ++k) {
            npow[i].push_back(npow[i].back() * values[i].num);
            dpow[i].push_back(dpow[i].back() * values[i].den);
        }
    }
    MPoly num(out_ctx);
    for (const auto& [e, c] : t.terms()) {
        MPoly term = MPoly::constant(out_ctx, c);
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] > 0) term *= npow[i][static_cast<std::size_t>(e[i])];
            if (maxdeg[i] - e[i] > 0) term *= dpow[i][static_cast<std::size_t>(maxdeg[i] - e[i])];
        }
        num += term;
    }
    MPoly den = one;
    for (std::size_t i = 0; i < n; ++i)
        if (maxdeg[i] > 0) den *= dpow[i][static_cast<std::size_t>(maxdeg[i])];
    return {num, den};
}

struct Residue {
    bool ok;
    MPoly witness;
    std::string detail;
};

Residue check_zero_mod(const MPoly& p, const Hypersurface& h, const std::string& what) {
    MPoly r = reduce_mod(p, h);
    if (r.is_zero()) return {true, r, ""};
    return {false, r, what};
}

}  // namespace

VerifyResult verify_parametrization(const BirationalMap& m) {
    VerifyResult out;
    auto failure = [&](const MPoly& witness, const std::string& detail) {
        out.state = VerifyState::Fail;
        out.witness = witness;
        out.detail = detail;
        return out;
    };
    if (m.forward.size() != m.target.vars.size() || m.inverse.size() != m.source.vars.size()) {
        out.state = VerifyState::Fail;
        out.detail = "component count does not match coordinates";
        return out;
    }

    // fractions of the inverse components over the target, and forward over the source
    std::vector<Frac> inv, fwd;
    for (const auto& g : m.inverse) {
        RatFunc gg = g.in_context(m.target.vars);
        inv.push_back({gg.num(), gg.den()});
    }
    for (const auto& f : m.forward) {
        RatFunc ff = f.in_context(m.source.vars);
        fwd.push_back({ff.num(), ff.den()});
    }
    for (const auto& g : inv)
        if (reduce_mod(g.den, m.target).is_zero())
            return failure(g.den, "inverse denominator lies in the target ideal");
    for (const auto& f : fwd)
        if (reduce_mod(f.den, m.source).is_zero())
            return failure(f.den, "forward denominator lies in the source ideal");

    // identity 1: the inverse lands on the source hypersurface
    if (m.source.eq) {
        Frac pulled = frac_substitute(*m.source.eq, m.source.vars, inv, m.target.vars);
        auto r = check_zero_mod(pulled.num, m.target, "inverse does not satisfy the source equation");
        if (!r.ok) return failure(r.witness, r.detail);
    }

    // identity 2: forward after inverse is the identity on the target
    for (std::size_t j = 0; j < m.target.vars.size(); ++j) {
        Frac num = frac_substitute(fwd[j].num, m.source.vars, inv, m.target.vars);
        Frac den = frac_substitute(fwd[j].den, m.source.vars, inv, m.target.vars);
        if (reduce_mod(den.num, m.target).is_zero())
            return failure(den.num, "composite denominator vanishes on the target");
        // num/den == y_j  <=>  num.num*den.den - y_j*den.num*num.den == 0
        MPoly y = MPoly::variable(m.target.vars, m.target.vars[j]);
        MPoly residue = num.num * den.den - y * den.num * num.den;
        auto r = check_zero_mod(residue, m.target, "forward o inverse is not the identity");
        if (!r.ok) return failure(r.witness, r.detail + " at " + m.target.vars[j]);
    }

    // identity 3: inverse after forward is the identity modulo the source ideal
    for (std::size_t i = 0; i < m.source.vars.size(); ++i) {
        Frac num = frac_substitute(inv[i].num, m.target.vars, fwd, m.source.vars);
        Frac den = frac_substitute(inv[i].den, m.target.vars, fwd, m.source.vars);
        if (reduce_mod(den.num, m.source).is_zero())
            return failure(den.num, "composite denominator vanishes on the source");
        MPoly x = MPoly::variable(m.source.vars, m.source.vars[i]);
        MPoly residue = num.num * den.den - x * den.num * num.den;
        auto r = check_zero_mod(residue, m.source, "inverse o forward is not the identity");
        if (!r.ok) return failure(r.witness, r.detail + " at " + m.source.vars[i]);
    }
    out.state = VerifyState::Pass;
    return out;
}

BirationalMap compose(const BirationalMap& first, const BirationalMap& second) {
    if (!(first.target == second.source))
        fail(ErrorCode::ChartMismatch, "middle charts do not agree");
    BirationalMap out;
    out.source = first.source;
    out.target = second.target;
    std::map<std::string, RatFunc> fwd_bind, inv_bind;
    for (std::size_t i = 0; i < first.target.vars.size(); ++i)
        fwd_bind.emplace(first.target.vars[i], first.forward[i].in_context(first.source.vars));
    for (std::size_t j = 0; j < second.source.vars.size(); ++j)
        inv_bind.emplace(second.source.vars[j], second.inverse[j].in_context(second.target.vars));
    for (const auto& f : second.forward)
        out.forward.push_back(substitute(f.in_context(second.source.vars), fwd_bind)
                                  .in_context(first.source.vars));
    for (const auto& g : first.inverse)
        out.inverse.push_back(substitute(g.in_context(first.target.vars), inv_bind)
                                  .in_context(second.target.vars));
    out.steps = first.steps;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    out.verified = VerifyResult{};
    return out;
}

BirationalMap identity_map(const Hypersurface& h) {
    BirationalMap m;
    m.source = h;
    m.target = h;
    for (const auto& v : h.vars) {
        m.forward.push_back(RatFunc::var(h.vars, v));
        m.inverse.push_back(RatFunc::var(h.vars, v));
    }
    return m;
}

BirationalMap coordinate_permutation(const Hypersurface& space,
                                     const std::vector<std::string>& permuted_vars) {
    if (space.eq) fail(ErrorCode::ChartMismatch, "permutations act on affine space here");
    if (permuted_vars.size() != space.vars.size())
        fail(ErrorCode::VariableMismatch, "permutation size mismatch");
    BirationalMap m;
    m.source = space;
    m.target = Hypersurface::affine_space(permuted_vars);
    for (const auto& v : permuted_vars) m.forward.push_back(RatFunc::var(space.vars, v));
    for (const auto& v : space.vars) m.inverse.push_back(RatFunc::var(permuted_vars, v));
    return m;
}

std::string map_to_text(const BirationalMap& m) {
    std::ostringstream os;
    auto chart = [&](const Hypersurface& h) {
        std::string vs;
        for (const auto& v : h.vars) vs += (vs.empty() ? "" : ", ") + v;
        os << "(" << vs << ")";
        if (h.eq) os << " with " << h.eq->to_string() << " = 0";
        os << "\n";
    };
    os << "source: ";
    chart(m.source);
    os << "target: ";
    chart(m.target);
    for (std::size_t j = 0; j < m.forward.size(); ++j)
        os << "forward " << m.target.vars[j] << " = " << m.forward[j].to_string() << "\n";
    for (std::size_t i = 0; i < m.inverse.size(); ++i)
        os << "inverse " << m.source.vars[i] << " = " << m.inverse[i].to_string() << "\n";
    for (const auto& step : m.steps) os << "step " << step.name << " [" << step.citation << "]\n";
    switch (m.verified.state) {
        case VerifyState::Unverified: os << "verified: unverified\n"; break;
        case VerifyState::Pass: os << "verified: pass\n"; break;
        case VerifyState::Fail: os << "verified: fail\n"; break;
    }
    return os.str();
}

}  // namespace cb
