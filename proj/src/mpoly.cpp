#include "cb/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cb {

bool GrlexLess::operator()(const Expvec& a, const Expvec& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    // lex: earlier variable with larger exponent wins
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MPoly MPoly::constant(std::vector<std::string> vars, const Scalar& value) {
    MPoly p(std::move(vars));
    if (!value.is_zero()) p.terms_.emplace(Expvec(p.vars_.size(), 0), value);
    return p;
}

MPoly MPoly::variable(std::vector<std::string> vars, const std::string& name) {
    MPoly p(std::move(vars));
    int idx = p.var_index(name);
    if (idx < 0) fail(ErrorCode::VariableMismatch, "variable " + name + " not in context");
    Expvec e(p.vars_.size(), 0);
    e[idx] = 1;
    p.terms_.emplace(std::move(e), Scalar(1));
    return p;
}

MPoly MPoly::monomial(std::vector<std::string> vars, Expvec exps, const Scalar& coeff) {
    MPoly p(std::move(vars));
    if (exps.size() != p.vars_.size())
        fail(ErrorCode::VariableMismatch, "exponent vector length mismatch");
    if (!coeff.is_zero()) p.terms_.emplace(std::move(exps), coeff);
    return p;
}

int MPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Scalar MPoly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) fail(ErrorCode::Internal, "constant_value of nonconstant polynomial");
    return terms_.begin()->second;
}

bool MPoly::is_univariate_in(const std::string& var) const {
    int idx = var_index(var);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && static_cast<int>(i) != idx) return false;
    return true;
}

int MPoly::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

int MPoly::degree_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) return 0;
    int deg = is_zero() ? -1 : 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[idx]);
    return deg;
}

bool MPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int deg = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) != deg) return false;
    return true;
}

const Expvec& MPoly::leading_exponents() const {
    if (terms_.empty()) fail(ErrorCode::Internal, "leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const Scalar& MPoly::leading_coeff() const {
    if (terms_.empty()) fail(ErrorCode::Internal, "leading term of zero polynomial");
    return terms_.rbegin()->second;
}

Scalar MPoly::coeff(const Expvec& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void MPoly::check_context(const MPoly& o) const {
    if (vars_ != o.vars_)
        fail(ErrorCode::VariableMismatch, "operands use different variable contexts");
}

void MPoly::insert_term(Expvec exps, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(exps), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly p(vars_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

MPoly MPoly::operator+(const MPoly& o) const {
    check_context(o);
    MPoly p = *this;
    for (const auto& [e, c] : o.terms_) p.insert_term(e, c);
    return p;
}

MPoly MPoly::operator-(const MPoly& o) const {
    check_context(o);
    MPoly p = *this;
    for (const auto& [e, c] : o.terms_) p.insert_term(e, -c);
    return p;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_context(o);
    MPoly p(vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Expvec e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.insert_term(std::move(e), ca * cb);
        }
    return p;
}

MPoly MPoly::operator*(const Scalar& s) const {
    MPoly p(vars_);
    if (s.is_zero()) return p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, c * s);
    return p;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) fail(ErrorCode::Internal, "negative polynomial power");
    MPoly result = constant(vars_, Scalar(1));
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        if (e >>= 1) base *= base;
    }
    return result;
}

MPoly MPoly::derivative(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) fail(ErrorCode::VariableMismatch, "derivative in unknown variable " + var);
    MPoly p(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Expvec d = e;
        d[idx] -= 1;
        p.insert_term(std::move(d), c * Scalar(e[idx]));
    }
    return p;
}

MPoly MPoly::in_context(const std::vector<std::string>& vars) const {
    MPoly p(vars);
    std::vector<int> where(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        where[i] = it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
    }
    for (const auto& [e, c] : terms_) {
        Expvec ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (where[i] < 0)
                fail(ErrorCode::VariableMismatch,
                     "variable " + vars_[i] + " used but missing from target context");
            ne[where[i]] = e[i];
        }
        p.insert_term(std::move(ne), c);
    }
    return p;
}

MPoly MPoly::set_vars(const std::map<std::string, Scalar>& values) const {
    std::vector<std::pair<int, Scalar>> fixed;
    for (const auto& [name, val] : values) {
        int idx = var_index(name);
        if (idx < 0) fail(ErrorCode::VariableMismatch, "set_vars: unknown variable " + name);
        fixed.emplace_back(idx, val);
    }
    MPoly p(vars_);
    for (const auto& [e, c] : terms_) {
        Scalar coeff = c;
        Expvec ne = e;
        for (const auto& [idx, val] : fixed) {
            if (ne[idx] > 0) coeff *= val.pow(ne[idx]);
            ne[idx] = 0;
        }
        p.insert_term(std::move(ne), coeff);
    }
    return p;
}

Scalar MPoly::eval(const std::map<std::string, Scalar>& values) const {
    MPoly fixed = set_vars(values);
    if (!fixed.is_constant())
        fail(ErrorCode::VariableMismatch, "eval did not fix every variable");
    return fixed.constant_value();
}

std::vector<MPoly> MPoly::coeffs_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) fail(ErrorCode::VariableMismatch, "coeffs_in: unknown variable " + var);
    int deg = degree_in(var);
    std::vector<MPoly> out(static_cast<std::size_t>(std::max(deg, 0) + 1), MPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Expvec ne = e;
        int k = ne[idx];
        ne[idx] = 0;
        out[k].insert_term(std::move(ne), c);
    }
    return out;
}

MPoly MPoly::from_coeffs(const std::vector<std::string>& vars, const std::string& var,
                         const std::vector<MPoly>& coeffs) {
    MPoly x = variable(vars, var);
    MPoly out(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        out += coeffs[k].in_context(vars) * x.pow(static_cast<int>(k));
    return out;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending graded-lex
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Scalar coeff = c;
        bool negative = false;
        if (coeff.is_rational() || (coeff.is_real() && coeff.imag_part().is_zero())) {
            if (coeff.is_real() && coeff.sign() < 0) {
                negative = true;
                coeff = -coeff;
            }
        }
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        bool unit_coeff = coeff == Scalar(1);
        std::string cs = coeff.is_rational() ? rat_to_string(coeff.rational_value())
                                             : "(" + coeff.to_string() + ")";
        if (mono.empty())
            os << cs;
        else if (unit_coeff)
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

void align(MPoly& a, MPoly& b) {
    if (a.vars() == b.vars()) return;
    auto ctx = merged_vars(a.vars(), b.vars());
    a = a.in_context(ctx);
    b = b.in_context(ctx);
}

PseudoDivision pseudo_divmod(const MPoly& dividend, const MPoly& divisor, const std::string& var) {
    if (divisor.is_zero()) fail(ErrorCode::DivisionByZero, "pseudo-division by zero");
    MPoly f = dividend, g = divisor;
    align(f, g);
    if (!f.has_var(var) && !g.has_var(var)) {
        auto ctx = merged_vars(f.vars(), {var});
        f = f.in_context(ctx);
        g = g.in_context(ctx);
    }
    const auto& vars = f.vars();
    int m = f.degree_in(var), n = g.degree_in(var);
    if (n < 0 || (g.degree_in(var) == 0 && g.is_zero()))
        fail(ErrorCode::DivisionByZero, "pseudo-division by zero");
    if (m < n || f.is_zero()) return {MPoly(vars), f, 0};
    auto fc = f.coeffs_in(var);
    auto gc = g.coeffs_in(var);
    MPoly lc = gc[n];
    std::vector<MPoly> rem = fc;
    std::vector<MPoly> quo(static_cast<std::size_t>(m - n + 1), MPoly(vars));
    int power = 0;
    for (int k = m; k >= n; --k) {
        MPoly top = rem[k];
        if (top.is_zero()) continue;
        // multiply the running remainder and quotient through by lc
        for (auto& r : rem) r *= lc;
        for (auto& q : quo) q *= lc;
        ++power;
        quo[k - n] += top;
        for (int j = 0; j <= n; ++j) rem[k - n + j] -= top * gc[j];
    }
    PseudoDivision out{MPoly::from_coeffs(vars, var, quo), MPoly::from_coeffs(vars, var, rem),
                       power};
    return out;
}

std::optional<MPoly> divide_exact(const MPoly& dividend, const MPoly& divisor) {
    if (divisor.is_zero()) fail(ErrorCode::DivisionByZero, "exact division by zero");
    MPoly f = dividend, g = divisor;
    align(f, g);
    MPoly quo(f.vars());
    const auto& glead = g.leading_exponents();
    while (!f.is_zero()) {
        const auto& flead = f.leading_exponents();
        Expvec diff(flead.size());
        for (std::size_t i = 0; i < flead.size(); ++i) {
            diff[i] = flead[i] - glead[i];
            if (diff[i] < 0) return std::nullopt;
        }
        MPoly t = MPoly::monomial(f.vars(), diff, f.leading_coeff() / g.leading_coeff());
        quo += t;
        f -= t * g;
    }
    return quo;
}

namespace {

// gcd of the coefficient list of p with respect to var (p's content).
MPoly content_in(const MPoly& p, const std::string& var) {
    auto cs = p.coeffs_in(var);
    MPoly g(p.vars());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MPoly::constant(p.vars(), Scalar(1)) : g;
}

MPoly make_monic(const MPoly& p) {
    if (p.is_zero() || p.leading_coeff() == Scalar(1)) return p;
    return p * p.leading_coeff().inverse();
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    MPoly f = a, g = b;
    align(f, g);
    if (f.is_zero()) return make_monic(g);
    if (g.is_zero()) return make_monic(f);
    std::string var;
    for (const auto& v : f.vars())
        if (f.degree_in(v) > 0 || g.degree_in(v) > 0) {
            var = v;
            break;
        }
    if (var.empty()) return MPoly::constant(f.vars(), Scalar(1));

    MPoly cf = content_in(f, var), cg = content_in(g, var);
    MPoly cont = poly_gcd(cf, cg);
    MPoly F = *divide_exact(f, cf);
    MPoly G = *divide_exact(g, cg);
    if (F.degree_in(var) < G.degree_in(var)) std::swap(F, G);
    while (!G.is_zero()) {
        MPoly r = pseudo_divmod(F, G, var).remainder;
        if (!r.is_zero()) r = *divide_exact(r, content_in(r, var));
        F = G;
        G = r;
    }
    MPoly result = cont * (*divide_exact(F, content_in(F, var)));
    return make_monic(result);
}

MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var) {
    MPoly f = a, g = b;
    align(f, g);
    if (!f.has_var(var)) {
        auto ctx = merged_vars(f.vars(), {var});
        f = f.in_context(ctx);
        g = g.in_context(ctx);
    }
    if (f.is_zero() || g.is_zero()) return MPoly(f.vars());
    int m = f.degree_in(var), n = g.degree_in(var);
    auto drop = [&](const MPoly& p) {
        return p;  // coefficients keep the full context with var absent
    };
    if (m == 0 && n == 0) return MPoly::constant(f.vars(), Scalar(1));
    if (m == 0) return drop(f.coeffs_in(var)[0].pow(n));
    if (n == 0) return drop(g.coeffs_in(var)[0].pow(m));

    auto fc = f.coeffs_in(var);
    auto gc = g.coeffs_in(var);
    const int size = m + n;
    std::vector<std::vector<MPoly>> M(static_cast<std::size_t>(size),
                                      std::vector<MPoly>(static_cast<std::size_t>(size), MPoly(f.vars())));
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) M[row][row + j] = fc[m - j];
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) M[n + row][row + j] = gc[n - j];

    // Bareiss fraction-free elimination.
    int sign = 1;
    MPoly prev = MPoly::constant(f.vars(), Scalar(1));
    for (int k = 0; k < size - 1; ++k) {
        if (M[k][k].is_zero()) {
            int pivot = -1;
            for (int i = k + 1; i < size; ++i)
                if (!M[i][k].is_zero()) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return MPoly(f.vars());  // singular: resultant 0
            std::swap(M[k], M[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                MPoly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                auto q = divide_exact(num, prev);
                if (!q) fail(ErrorCode::Internal, "Bareiss division failed");
                M[i][j] = *q;
            }
            M[i][k] = MPoly(f.vars());
        }
        prev = M[k][k];
    }
    MPoly det = M[size - 1][size - 1];
    return sign < 0 ? -det : det;
}

MPoly make_squarefree(const MPoly& p, const std::string& var) {
    if (p.is_zero() || p.degree_in(var) == 0) return p;
    MPoly g = poly_gcd(p, p.derivative(var));
    if (g.is_constant()) return p;
    return *divide_exact(p, g.in_context(p.vars()));
}

std::vector<SquarefreePart> squarefree_decomposition(const MPoly& p, const std::string& var) {
    std::vector<SquarefreePart> out;
    if (p.is_zero()) fail(ErrorCode::DivisionByZero, "squarefree decomposition of zero");
    if (p.degree_in(var) == 0) return out;
    MPoly g = poly_gcd(p, p.derivative(var));
    MPoly w = *divide_exact(p, g.in_context(p.vars()));
    MPoly y = *divide_exact(p.derivative(var), g.in_context(p.vars()));
    int i = 1;
    while (w.degree_in(var) > 0) {
        MPoly z = y - w.derivative(var);
        MPoly h = poly_gcd(w, z);
        if (h.degree_in(var) > 0) out.push_back({h, i});
        w = *divide_exact(w, h.in_context(w.vars()));
        y = *divide_exact(z, h.in_context(z.vars()));
        ++i;
    }
    return out;
}

}  // namespace cb
