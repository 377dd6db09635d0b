#include "cb/factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace cb {

namespace {

std::string main_var(const MPoly& p) {
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        for (const auto& [e, c] : p.terms())
            if (e[i] > 0) return p.vars()[i];
    return p.vars().empty() ? std::string("w") : p.vars()[0];
}

std::vector<Rat> rational_coeffs(const MPoly& p, const std::string& var) {
    auto parts = p.coeffs_in(var);
    std::vector<Rat> out;
    for (const auto& c : parts) {
        if (!c.is_constant())
            fail(ErrorCode::VariableMismatch, "polynomial is not univariate");
        Scalar v = c.constant_value();
        if (!v.is_rational())
            fail(ErrorCode::UnsupportedField, "factoring requires rational coefficients");
        out.push_back(v.rational_value());
    }
    return out;
}

std::vector<mpz_class> divisors_of(const mpz_class& n) {
    std::vector<mpz_class> out;
    mpz_class m = ::abs(n);
    for (mpz_class d = 1; d * d <= m; ++d) {
        if (!mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) continue;
        out.push_back(d);
        mpz_class q = m / d;
        if (q != d) out.push_back(q);
    }
    return out;
}

// --- numeric root finding (search heuristic only; all results are verified
// --- exactly before being used)

std::vector<std::complex<double>> durand_kerner(std::vector<std::complex<double>> c) {
    // c: monic coefficients, c[deg] == 1
    int deg = static_cast<int>(c.size()) - 1;
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    std::vector<std::complex<double>> z(deg);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> power(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        power *= seed;
        z[i] = power;
    }
    for (int iter = 0; iter < 600; ++iter) {
        double shift = 0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            std::complex<double> delta = eval(z[i]) / denom;
            z[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    return z;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<Rat>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<std::complex<double>> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = coeffs[i].get_d() / coeffs[deg].get_d();
    c[deg] = 1.0;
    return durand_kerner(std::move(c));
}

bool reconstruct_rational(double x, long max_den, Rat& out) {
    // continued-fraction reconstruction with a denominator bound
    double target = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(target);
        if (fl > 1e15 || fl < -1e15) return false;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = target - fl;
        if (rem < 1e-12) break;
        target = 1.0 / rem;
    }
    if (q1 == 0) return false;
    Rat cand(p1, q1);
    cand.canonicalize();
    if (std::abs(cand.get_d() - x) > 1e-6 * std::max(1.0, std::abs(x))) return false;
    out = cand;
    return true;
}

// monic polynomial with the chosen numeric roots; index = power of x
std::vector<std::complex<double>> subset_poly(const std::vector<std::complex<double>>& roots,
                                              const std::vector<int>& pick) {
    std::vector<std::complex<double>> c{1.0};
    for (int idx : pick) {
        c.push_back(0.0);
        for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
            c[i] = c[i - 1] - roots[idx] * c[i];
        c[0] = -roots[idx] * c[0];
    }
    return c;
}

void all_subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

MPoly from_rat_coeffs(const std::vector<std::string>& vars, const std::string& var,
                      const std::vector<Rat>& coeffs) {
    MPoly out(vars);
    auto idx = static_cast<std::size_t>(out.var_index(var));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        Expvec e(vars.size(), 0);
        e[idx] = static_cast<int>(k);
        out.insert_term(std::move(e), Scalar(coeffs[k]));
    }
    return out;
}

std::vector<Rat> rational_root_candidates(const std::vector<Rat>& coeffs) {
    // integerize: roots u/v with u | tail, v | lead of the primitive version
    mpz_class lcm_den = 1;
    for (const auto& q : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> zc;
    for (const auto& q : coeffs) zc.push_back(q.get_num() * (lcm_den / q.get_den()));
    std::size_t low = 0;
    while (low < zc.size() && zc[low] == 0) ++low;
    if (low == zc.size()) return {};
    mpz_class tail = zc[low], lead = zc.back();
    std::vector<Rat> out;
    for (const auto& u : divisors_of(tail))
        for (const auto& v : divisors_of(lead)) {
            Rat r(u, v);
            r.canonicalize();
            out.push_back(r);
            out.push_back(-r);
        }
    return out;
}

// divide coefficient vector (monic or not) by (x - r), in place; remainder returned
Rat deflate(std::vector<Rat>& c, const Rat& r) {
    Rat carry = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        Rat tmp = c[i] + carry * r;
        c[i] = carry;
        carry = tmp;
    }
    c.erase(c.begin());
    return carry;  // value at r
}

Rat eval_rat(const std::vector<Rat>& c, const Rat& x) {
    Rat acc = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
    return acc;
}

// All monic rational quadratic factors x^2 + b*x + g of a squarefree f.
std::vector<std::pair<Rat, Rat>> quadratic_factors(const MPoly& f, const std::string& var) {
    if (f.degree_in(var) < 4) {
        // a quadratic factor of a cubic pairs with a linear one; handled elsewhere
        if (f.degree_in(var) != 2) return {};
        auto c = rational_coeffs(f, var);
        return {{c[1] / c[2], c[0] / c[2]}};
    }
    std::vector<std::string> ctx{var, "b@", "g@"};
    MPoly F = f.in_context(ctx);
    MPoly divisor = MPoly::variable(ctx, var).pow(2) +
                    MPoly::variable(ctx, "b@") * MPoly::variable(ctx, var) +
                    MPoly::variable(ctx, "g@");
    MPoly rem = pseudo_divmod(F, divisor, var).remainder;
    auto rc = rem.coeffs_in(var);
    MPoly R1 = rc.size() > 1 ? rc[1] : MPoly(ctx);
    MPoly R0 = rc[0];
    if (R1.is_zero() || R0.is_zero())
        fail(ErrorCode::Internal, "degenerate quadratic-factor elimination");
    MPoly res = resultant(R1, R0, "g@");
    std::vector<std::pair<Rat, Rat>> found;
    for (const auto& beta : rational_roots(res)) {
        MPoly r1b = R1.set_vars({{"b@", beta}});
        MPoly r0b = R0.set_vars({{"b@", beta}});
        MPoly gpoly = r1b.is_zero() ? r0b : r1b;
        if (gpoly.is_zero()) continue;
        for (const auto& gamma : rational_roots(gpoly)) {
            if (!r0b.set_vars({{"g@", gamma}}).is_zero()) continue;
            if (!r1b.set_vars({{"g@", gamma}}).is_zero()) continue;
            found.emplace_back(beta.rational_value(), gamma.rational_value());
        }
    }
    return found;
}

// Factor a monic squarefree rational polynomial into monic irreducible parts.
std::vector<MPoly> factor_squarefree_rational(MPoly f, const std::string& var) {
    std::vector<MPoly> out;
    const auto vars = f.vars();
    auto mk_linear = [&](const Rat& root) {
        return MPoly::variable(vars, var) - MPoly::constant(vars, Scalar(root));
    };
    auto mk_quadratic = [&](const Rat& b, const Rat& g) {
        return MPoly::variable(vars, var).pow(2) + MPoly::variable(vars, var) * Scalar(b) +
               MPoly::constant(vars, Scalar(g));
    };
    // linear factors
    bool progress = true;
    while (progress && f.degree_in(var) > 0) {
        progress = false;
        for (const auto& root : rational_roots(f)) {
            MPoly lin = mk_linear(root.rational_value());
            f = *divide_exact(f, lin);
            out.push_back(lin);
            progress = true;
            break;  // squarefree: each root once, but recompute on the deflated poly
        }
    }
    // quadratic factors
    progress = true;
    while (progress && f.degree_in(var) >= 2) {
        progress = false;
        for (const auto& [b, g] : quadratic_factors(f, var)) {
            MPoly quad = mk_quadratic(b, g);
            auto q = divide_exact(f, quad);
            if (!q) continue;
            f = *q;
            out.push_back(quad);
            progress = true;
            break;
        }
    }
    int d = f.degree_in(var);
    if (d == 0) return out;
    if (d <= 5) {  // no factor of degree <= 2 remains, so degree <= 5 is irreducible
        out.push_back(f);
        return out;
    }
    // degrees 6..8: search cubic/quartic factors numerically, verify exactly;
    // with no factor of degree <= 2 the splits are 3+3, 3+4, 3+5 or 4+4
    auto coeffs = rational_coeffs(f, var);
    auto roots = numeric_roots(coeffs);
    std::vector<int> sizes{3};
    if (d == 8) sizes.push_back(4);
    for (int k : sizes) {
        std::vector<std::vector<int>> subsets;
        all_subsets(d, k, subsets);
        for (const auto& pick : subsets) {
            auto cand = subset_poly(roots, pick);
            std::vector<Rat> rc(cand.size());
            bool ok = true;
            for (std::size_t i = 0; i + 1 < cand.size() && ok; ++i) {
                if (std::abs(cand[i].imag()) > 1e-7) ok = false;
                else if (!reconstruct_rational(cand[i].real(), 1000000, rc[i])) ok = false;
            }
            if (!ok) continue;
            rc.back() = 1;
            MPoly g = from_rat_coeffs(vars, var, rc);
            auto q = divide_exact(f, g);
            if (!q) continue;
            auto left = factor_squarefree_rational(g, var);
            auto right = factor_squarefree_rational(*q, var);
            out.insert(out.end(), left.begin(), left.end());
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
    }
    out.push_back(f);  // no verified split found
    return out;
}

// Attempt to split a monic rational polynomial, irreducible over Q, into a
// conjugate pair g * conj(g) over Q(i).
std::optional<MPoly> gaussian_split(const MPoly& h, const std::string& var) {
    int d = h.degree_in(var);
    if (d % 2 != 0 || d < 2) return std::nullopt;
    auto coeffs = rational_coeffs(h, var);
    auto roots = numeric_roots(coeffs);
    std::vector<std::vector<int>> subsets;
    all_subsets(d, d / 2, subsets);
    const auto vars = h.vars();
    for (const auto& pick : subsets) {
        auto cand = subset_poly(roots, pick);
        MPoly g(vars);
        bool ok = true;
        for (std::size_t i = 0; i < cand.size() && ok; ++i) {
            Rat re, im;
            if (i + 1 == cand.size()) {
                re = 1;
                im = 0;
            } else if (!reconstruct_rational(cand[i].real(), 1000000, re) ||
                       !reconstruct_rational(cand[i].imag(), 1000000, im)) {
                ok = false;
                break;
            }
            Scalar coeff = Scalar(re) + Scalar(im) * Scalar::i();
            Expvec e(vars.size(), 0);
            e[static_cast<std::size_t>(g.var_index(var))] = static_cast<int>(i);
            g.insert_term(std::move(e), coeff);
        }
        if (!ok) continue;
        MPoly gconj(vars);
        for (const auto& [e, c] : g.terms()) gconj.insert_term(e, c.conj());
        if (g * gconj == h && g != gconj) return g;
    }
    return std::nullopt;
}

}  // namespace

std::vector<Scalar> rational_roots(const MPoly& p) {
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "roots of the zero polynomial");
    std::string var = main_var(p);
    auto coeffs = rational_coeffs(p, var);
    std::vector<Scalar> out;
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == 0) ++low;
    if (low == coeffs.size()) return out;
    if (low > 0) out.push_back(Scalar(0));
    std::vector<Rat> reduced(coeffs.begin() + static_cast<long>(low), coeffs.end());
    if (reduced.size() <= 1) return out;
    for (const auto& cand : rational_root_candidates(reduced))
        if (eval_rat(reduced, cand) == 0) out.push_back(Scalar(cand));
    std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Factorization factor_univariate(const MPoly& p, CoeffField field) {
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "factorization of zero");
    std::string var = main_var(p);
    int deg = p.degree_in(var);
    if (deg > 8) fail(ErrorCode::DegreeTooLarge, "univariate factoring bound is degree 8");
    (void)rational_coeffs(p, var);  // field check
    Factorization out;
    out.content = Scalar(1);
    if (deg == 0) {
        out.content = p.constant_value();
        return out;
    }
    for (const auto& [sqfree, mult] : squarefree_decomposition(p, var)) {
        for (const auto& h : factor_squarefree_rational(sqfree, var)) {
            if (field == CoeffField::Rationals) {
                out.parts.push_back({h, mult});
                continue;
            }
            if (auto g = gaussian_split(h, var)) {
                MPoly gc(g->vars());
                for (const auto& [e, c] : g->terms()) gc.insert_term(e, c.conj());
                out.parts.push_back({*g, mult});
                out.parts.push_back({gc, mult});
            } else {
                out.parts.push_back({h, mult});
            }
        }
    }
    // content = p / prod(parts)
    MPoly prod = MPoly::constant(p.vars(), Scalar(1));
    for (const auto& part : out.parts) prod *= part.factor.in_context(p.vars()).pow(part.multiplicity);
    auto q = divide_exact(p, prod);
    if (!q || !q->is_constant()) fail(ErrorCode::Internal, "factorization does not recombine");
    out.content = q->constant_value();
    return out;
}

std::vector<Scalar> solve_quadratic(const Scalar& a, const Scalar& b, const Scalar& c) {
    if (a.is_zero()) {
        if (b.is_zero()) fail(ErrorCode::DivisionByZero, "degenerate quadratic");
        return {-c / b};
    }
    Scalar disc = b * b - Scalar(4) * a * c;
    auto root = disc.sqrt_any();
    if (!root) fail(ErrorCode::NeedsExtension, "discriminant " + disc.to_string() +
                                                   " has no square root in the tower");
    Scalar two_a = Scalar(2) * a;
    return {(-b + *root) / two_a, (-b - *root) / two_a};
}

SmallFieldRoots roots_in_quadratic_fields(const MPoly& p) {
    SmallFieldRoots out;
    out.complete = true;
    if (p.is_zero() || p.is_constant()) return out;
    std::string var = main_var(p);
    if (p.degree_in(var) > 8) {
        // work factor-by-factor of the squarefree part to stay inside the bound
        MPoly sf = make_squarefree(p, var);
        if (sf.degree_in(var) > 8) fail(ErrorCode::DegreeTooLarge, "root solving bound exceeded");
        return roots_in_quadratic_fields(sf);
    }
    auto fac = factor_univariate(p, CoeffField::Rationals);
    for (const auto& part : fac.parts) {
        int d = part.factor.degree_in(var);
        auto coeffs = rational_coeffs(part.factor, var);
        if (d == 1) {
            out.roots.push_back(Scalar(-coeffs[0]));
        } else if (d == 2) {
            for (const auto& r :
                 solve_quadratic(Scalar(coeffs[2]), Scalar(coeffs[1]), Scalar(coeffs[0])))
                out.roots.push_back(r);
        } else {
            out.complete = false;
        }
    }
    return out;
}

}  // namespace cb
