#include "cb/sum_of_squares.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "cb/factor.hpp"
#include "cb/sturm.hpp"

namespace cb {

namespace {

std::string main_var(const MPoly& p) {
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        for (const auto& [e, c] : p.terms())
            if (e[i] > 0) return p.vars()[i];
    return p.vars().empty() ? std::string("w") : p.vars()[0];
}

bool all_rational(const MPoly& p) {
    for (const auto& [e, c] : p.terms())
        if (!c.is_rational()) return false;
    return true;
}

struct Pair {
    MPoly a, b;
};

Pair combine(const Pair& x, const Pair& y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
}

std::optional<Pair> rational_two_squares(const std::vector<std::string>& vars, const Rat& value) {
    auto split = rational_sum_of_two_squares(value);
    if (!split) return std::nullopt;
    return Pair{MPoly::constant(vars, Scalar(split->first)),
                MPoly::constant(vars, Scalar(split->second))};
}

// split of a positive scalar c: (sqrt part, sqrt part) or (rational, rational)
Pair scalar_split(const std::vector<std::string>& vars, const Scalar& c) {
    if (c.is_rational()) {
        if (auto p = rational_two_squares(vars, c.rational_value())) return *p;
    }
    auto root = c.sqrt();
    if (!root)
        fail(ErrorCode::NeedsExtension,
             "scalar " + c.to_string() + " is not a tower square and not a sum of two squares");
    return {MPoly::constant(vars, *root), MPoly::constant(vars, Scalar(0))};
}

// conjugate-pair split of an irreducible positive-definite polynomial over
// Q(i*sqrt(m)); exact verification with tower arithmetic
std::optional<MPoly> twisted_split(const MPoly& h, const std::string& var, long long m);

std::optional<Pair> split_positive_definite(const MPoly& h, const std::string& var) {
    int d = h.degree_in(var);
    const auto& vars = h.vars();
    auto coeffs = h.coeffs_in(var);
    if (d == 2) {
        // monic: (x + p1/2)^2 + (p0 - p1^2/4), constant term handled by one square root
        Scalar p1 = coeffs[1].constant_value(), p0 = coeffs[0].constant_value();
        MPoly a = MPoly::variable(vars, var) + MPoly::constant(vars, p1 / Scalar(2));
        Scalar c0 = p0 - p1 * p1 / Scalar(4);
        auto root = c0.sqrt();
        if (!root) return std::nullopt;
        return Pair{a, MPoly::constant(vars, *root)};
    }
    // try a Gaussian split h = g * conj(g) via factor machinery
    auto fac = factor_univariate(h, CoeffField::GaussianRationals);
    if (fac.parts.size() == 2) {
        const MPoly& g = fac.parts[0].factor;
        MPoly a(vars), b(vars);
        for (const auto& [e, c] : g.terms()) {
            a.insert_term(e, c.real_part());
            b.insert_term(e, c.imag_part());
        }
        if (a * a + b * b == h) return Pair{a, b};
    }
    // twisted splits h = A^2 + m*B^2 over Q(i*sqrt(m))
    std::vector<long long> candidates{2, 3, 5, 6, 7, 10, 11, 13};
    for (int k : {0, 1, -1, 2, -2}) {
        Scalar v = h.set_vars({{var, Scalar(k)}}).constant_value();
        if (!v.is_rational()) continue;
        mpz_class n = v.rational_value().get_num() * v.rational_value().get_den();
        long long sf = squarefree_decompose(n).part;
        if (sf > 1) candidates.push_back(sf);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (long long m : candidates) {
        auto g = twisted_split(h, var, m);
        if (!g) continue;
        MPoly a(vars), b(vars);
        for (const auto& [e, c] : g->terms()) {
            a.insert_term(e, c.real_part());
            // imag part of x + y*i*sqrt(m) is y*sqrt(m)
            b.insert_term(e, c.imag_part());
        }
        if (a * a + b * b == h) return Pair{a, b};
    }
    return std::nullopt;
}

}  // namespace

namespace {

// numeric machinery shared with factor.cpp is intentionally not exported;
// a small local copy keeps the twisted search self-contained
std::vector<std::complex<double>> dk_roots(const std::vector<Rat>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<std::complex<double>> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = coeffs[i].get_d() / coeffs[deg].get_d();
    c[deg] = 1.0;
    std::vector<std::complex<double>> z(deg);
    std::complex<double> seed(0.4, 0.9), power(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        power *= seed;
        z[i] = power;
    }
    auto eval = [&](std::complex<double> t) {
        std::complex<double> acc = 0;
        for (int i = deg; i >= 0; --i) acc = acc * t + c[i];
        return acc;
    };
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

bool cf_reconstruct(double x, Rat& out) {
    double target = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(target);
        if (fl > 1e15 || fl < -1e15) return false;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 1000000) break;
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

std::optional<MPoly> twisted_split(const MPoly& h, const std::string& var, long long m) {
    int d = h.degree_in(var);
    if (d % 2 != 0) return std::nullopt;
    std::vector<Rat> coeffs;
    for (const auto& c : h.coeffs_in(var)) {
        if (!c.constant_value().is_rational()) return std::nullopt;
        coeffs.push_back(c.constant_value().rational_value());
    }
    auto roots = dk_roots(coeffs);
    double sqm = std::sqrt(static_cast<double>(m));
    const auto& vars = h.vars();
    std::vector<int> pick(d / 2);
    // iterate over all size-(d/2) subsets
    for (int i = 0; i < d / 2; ++i) pick[i] = i;
    while (true) {
        std::vector<std::complex<double>> cand{1.0};
        for (int idx : pick) {
            cand.insert(cand.begin(), 0.0);
            for (std::size_t i = 0; i + 1 < cand.size(); ++i) cand[i] -= roots[idx] * cand[i + 1];
        }
        MPoly g(vars);
        bool ok = true;
        for (std::size_t i = 0; i < cand.size() && ok; ++i) {
            Rat re, im;
            if (i + 1 == cand.size()) {
                re = 1;
                im = 0;
            } else if (!cf_reconstruct(cand[i].real(), re) ||
                       !cf_reconstruct(cand[i].imag() / sqm, im)) {
                ok = false;
                break;
            }
            Scalar coeff = Scalar(re) + Scalar::radical(im, -m);
            Expvec e(vars.size(), 0);
            e[static_cast<std::size_t>(g.var_index(var))] = static_cast<int>(i);
            g.insert_term(std::move(e), coeff);
        }
        if (ok) {
            MPoly gc(vars);
            for (const auto& [e, c] : g.terms()) gc.insert_term(e, c.conj());
            if (g * gc == h && g != gc) return g;
        }
        int i = d / 2 - 1;
        while (i >= 0 && pick[i] == d - d / 2 + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < d / 2; ++j) pick[j] = pick[j - 1] + 1;
    }
    return std::nullopt;
}

}  // namespace

TwoSquares sum_of_two_squares(const MPoly& p) {
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "sum of two squares of zero");
    std::string var = main_var(p);
    const auto& vars = p.vars();

    if (auto witness = negative_value_witness(p))
        fail(ErrorCode::NotNonnegative,
             "input is negative at " + var + " = " + witness->to_string());

    if (!all_rational(p)) {
        // tower coefficients: only the quadratic completion pattern is attempted
        int d = p.degree_in(var);
        auto cs = p.coeffs_in(var);
        if (d == 0) {
            Pair pr = scalar_split(vars, p.constant_value());
            MPoly a = pr.a, b = pr.b;
            return {a, b, 0};
        }
        if (d == 2) {
            Scalar lc = cs[2].constant_value();
            auto lroot = lc.sqrt();
            if (lroot) {
                Scalar p1 = cs[1].constant_value() / lc, p0 = cs[0].constant_value() / lc;
                MPoly a = (MPoly::variable(vars, var) + MPoly::constant(vars, p1 / Scalar(2))) *
                          *lroot;
                Scalar c0 = (p0 - p1 * p1 / Scalar(4)) * lc;
                auto croot = c0.sqrt();
                if (croot) {
                    MPoly b = MPoly::constant(vars, *croot);
                    if (a * a + b * b == p) return {a, b, 0};
                }
            }
        }
        fail(ErrorCode::NeedsExtension,
             "no decomposition found for non-rational coefficients: " + p.to_string());
    }

    auto decomposition = squarefree_decomposition(p, var);
    MPoly even_part = MPoly::constant(vars, Scalar(1));
    MPoly odd_part = MPoly::constant(vars, Scalar(1));
    for (const auto& [factor, mult] : decomposition) {
        even_part *= factor.pow(mult / 2);
        if (mult % 2 == 1) odd_part *= factor;
    }
    MPoly recombined = even_part * even_part * odd_part;
    auto lead = divide_exact(p, recombined);
    if (!lead || !lead->is_constant()) fail(ErrorCode::Internal, "squarefree recombination failed");
    Scalar lc = lead->constant_value();
    if (lc.sign() <= 0)
        fail(ErrorCode::NotNonnegative, "leading coefficient is not positive");

    Pair acc{MPoly::constant(vars, Scalar(1)), MPoly::constant(vars, Scalar(0))};
    if (odd_part.degree_in(var) > 0) {
        auto fac = factor_univariate(odd_part, CoeffField::Rationals);
        lc *= fac.content;
        for (const auto& part : fac.parts) {
            auto split = split_positive_definite(part.factor, var);
            if (!split)
                fail(ErrorCode::NeedsExtension,
                     "irreducible factor admits no two-square split within one extension: " +
                         part.factor.to_string());
            for (int k = 0; k < part.multiplicity; ++k) acc = combine(acc, *split);
        }
    }
    acc = combine(acc, scalar_split(vars, lc));
    acc.a *= even_part;
    acc.b *= even_part;

    if (acc.a * acc.a + acc.b * acc.b != p)
        fail(ErrorCode::Internal, "two-square identity failed to verify");

    // deterministic presentation: nonnegative leading coefficients, larger part first
    auto normalize = [&](MPoly& q) {
        if (!q.is_zero() && q.leading_coeff().is_real() && q.leading_coeff().sign() < 0) q = -q;
    };
    normalize(acc.a);
    normalize(acc.b);
    if (acc.b.total_degree() > acc.a.total_degree()) std::swap(acc.a, acc.b);
    long long radicand = 0;
    for (const auto& poly : {acc.a, acc.b})
        for (const auto& [e, c] : poly.terms())
            if (radicand == 0 && !c.is_rational()) radicand = c.radicand1();
    return {acc.a, acc.b, radicand};
}

std::optional<std::pair<Rat, Rat>> rational_sum_of_two_squares(const Rat& value) {
    if (sgn(value) < 0) return std::nullopt;
    mpz_class n = value.get_num() * value.get_den();
    if (n > 2000000000000L) return std::nullopt;
    mpz_class a = 0;
    while (a * a * 2 <= n) {
        mpz_class rest = n - a * a;
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            mpz_class b;
            mpz_sqrt(b.get_mpz_t(), rest.get_mpz_t());
            Rat ra(a, value.get_den()), rb(b, value.get_den());
            ra.canonicalize();
            rb.canonicalize();
            return std::make_pair(ra, rb);
        }
        ++a;
    }
    return std::nullopt;
}

}  // namespace cb
