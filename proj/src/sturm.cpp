#include "cb/sturm.hpp"

#include <vector>

namespace cb {

namespace {

// Dense univariate view with exact field coefficients.
using Coeffs = std::vector<Scalar>;

Coeffs to_coeffs(const MPoly& p, const std::string& var) {
    auto parts = p.coeffs_in(var);
    Coeffs out;
    out.reserve(parts.size());
    for (const auto& c : parts) {
        if (!c.is_constant())
            fail(ErrorCode::VariableMismatch, "polynomial is not univariate in " + var);
        out.push_back(c.constant_value());
    }
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

int degree(const Coeffs& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (!f[i].is_zero()) return i;
    return -1;
}

// remainder of f by g, exact division in the coefficient field
Coeffs rem(Coeffs f, const Coeffs& g) {
    int dg = degree(g);
    Scalar lead = g[dg];
    for (int df = degree(f); df >= dg && df >= 0; df = degree(f)) {
        Scalar q = f[df] / lead;
        for (int j = 0; j <= dg; ++j) f[df - dg + j] -= q * g[j];
        f[df] = Scalar(0);  // force exact cancellation of the top slot
    }
    f.resize(std::max(degree(f) + 1, 1), Scalar(0));
    return f;
}

std::vector<Coeffs> sturm_chain(const MPoly& p, const std::string& var) {
    Coeffs f = to_coeffs(p, var);
    std::vector<Coeffs> chain;
    if (degree(f) <= 0) return chain;
    chain.push_back(f);
    Coeffs d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Scalar(static_cast<long>(i));
    chain.push_back(d);
    while (degree(chain.back()) > 0) {
        Coeffs r = rem(chain[chain.size() - 2], chain.back());
        if (degree(r) < 0) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_at(const Coeffs& f, const Scalar& x) {
    Scalar acc(0);
    for (int i = degree(f); i >= 0; --i) acc = acc * x + f[i];
    return acc.sign();
}

int sign_at_infinity(const Coeffs& f, bool positive) {
    int d = degree(f);
    if (d < 0) return 0;
    int s = f[d].sign();
    if (!positive && (d % 2 == 1)) s = -s;
    return s;
}

// Sign variations, skipping zeros.
int variations(const std::vector<int>& signs) {
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<Coeffs>& chain, const Scalar& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) signs.push_back(sign_at(f, x));
    return variations(signs);
}

int variations_at_infinity(const std::vector<Coeffs>& chain, bool positive) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& f : chain) signs.push_back(sign_at_infinity(f, positive));
    return variations(signs);
}

std::string only_var(const MPoly& p) {
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        for (const auto& [e, c] : p.terms())
            if (e[i] > 0) return p.vars()[i];
    return p.vars().empty() ? std::string("w") : p.vars()[0];
}

}  // namespace

int sturm_real_roots(const MPoly& p) {
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "root count of the zero polynomial");
    if (p.is_constant()) return 0;
    auto chain = sturm_chain(p, only_var(p));
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int sturm_real_roots(const MPoly& p, const Scalar& lo, const Scalar& hi) {
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "root count of the zero polynomial");
    if (p.is_constant()) return 0;
    if (hi < lo) return 0;
    std::string var = only_var(p);
    auto chain = sturm_chain(p, var);
    int count = variations_at(chain, lo) - variations_at(chain, hi);
    // closed interval: a root exactly at lo is not seen by the half-open count
    if (sign_at(chain[0], lo) == 0) ++count;
    return count;
}

Scalar cauchy_root_bound(const MPoly& p) {
    std::string var = only_var(p);
    auto parts = p.coeffs_in(var);
    Scalar lead = parts.back().constant_value();
    Scalar bound(1);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Scalar ratio = (parts[i].constant_value() / lead).abs();
        if (ratio > bound) bound = ratio;
    }
    return bound + Scalar(1);
}

std::optional<Scalar> negative_value_witness(const MPoly& p) {
    if (p.is_zero()) return std::nullopt;
    std::string var = only_var(p);
    if (p.is_constant())
        return p.constant_value().sign() < 0 ? std::optional<Scalar>(Scalar(0)) : std::nullopt;
    auto eval = [&](const Scalar& x) { return p.set_vars({{var, x}}).constant_value(); };
    int deg = p.degree_in(var);
    auto lead = p.coeffs_in(var)[deg].constant_value();
    if (deg % 2 == 1 || lead.sign() < 0) {
        // unbounded below on one side; march outward
        for (Scalar x(1);; x *= Scalar(2)) {
            if (eval(x).sign() < 0) return x;
            if (eval(-x).sign() < 0) return -x;
        }
    }
    // Even degree, positive leading term: negative values exist iff some real
    // root has odd multiplicity.
    MPoly odd_part = MPoly::constant(p.vars(), Scalar(1));
    for (const auto& [factor, mult] : squarefree_decomposition(p, var))
        if (mult % 2 == 1) odd_part *= factor;
    if (odd_part.is_constant()) return std::nullopt;
    if (sturm_real_roots(odd_part) == 0) return std::nullopt;
    // Isolate one sign-change root, then probe a shrinking neighborhood; p is
    // negative somewhere on one side of it.
    Scalar lo = -cauchy_root_bound(odd_part), hi = cauchy_root_bound(odd_part);
    while (sturm_real_roots(odd_part, lo, hi) > 1) {
        Scalar mid = (lo + hi) / Scalar(2);
        if (sturm_real_roots(odd_part, lo, mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    for (int round = 0; round < 200; ++round) {
        Scalar width = hi - lo;
        Scalar start = lo - width;
        for (long j = 0; j <= 32; ++j) {
            Scalar t = start + width * Scalar(3 * j, 32);
            if (eval(t).sign() < 0) return t;
        }
        Scalar mid = (lo + hi) / Scalar(2);
        if (sturm_real_roots(odd_part, lo, mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    fail(ErrorCode::Internal, "sign change detected but no witness located");
}

}  // namespace cb
