#include "cb/ratfunc.hpp"

#include <algorithm>

namespace cb {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)) {
    den_ = MPoly::constant(num_.vars(), Scalar(1));
}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    align(num_, den_);
    reduce();
}

RatFunc RatFunc::from_scalar(std::vector<std::string> vars, const Scalar& value) {
    return RatFunc(MPoly::constant(std::move(vars), value));
}

RatFunc RatFunc::var(std::vector<std::string> vars, const std::string& name) {
    return RatFunc(MPoly::variable(std::move(vars), name));
}

void RatFunc::reduce() {
    if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = MPoly::constant(num_.vars(), Scalar(1));
        return;
    }
    if (!den_.is_constant()) {
        MPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
    }
    const Scalar lead = den_.leading_coeff();
    if (lead != Scalar(1)) {
        Scalar inv = lead.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    RatFunc a = *this, b = o;
    align(a, b);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    RatFunc a = *this, b = o;
    align(a, b);
    // cross-cancel before multiplying to keep intermediates small
    MPoly g1 = poly_gcd(a.num_, b.den_);
    if (!g1.is_constant()) {
        a.num_ = *divide_exact(a.num_, g1);
        b.den_ = *divide_exact(b.den_, g1);
    }
    MPoly g2 = poly_gcd(b.num_, a.den_);
    if (!g2.is_constant()) {
        b.num_ = *divide_exact(b.num_, g2);
        a.den_ = *divide_exact(a.den_, g2);
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
    RatFunc flipped(o.den(), o.num());
    return *this * flipped;
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return RatFunc(den_, num_).pow(-e);
    RatFunc out = from_scalar(vars(), Scalar(1));
    RatFunc base = *this;
    while (e > 0) {
        if (e & 1) out *= base;
        if (e >>= 1) base *= base;
    }
    return out;
}

bool RatFunc::operator==(const RatFunc& o) const {
    RatFunc a = *this, b = o;
    align(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
}

RatFunc RatFunc::in_context(const std::vector<std::string>& vars) const {
    RatFunc r;
    r.num_ = num_.in_context(vars);
    r.den_ = den_.in_context(vars);
    return r;
}

std::string RatFunc::to_string() const {
    if (is_polynomial() && den_.constant_value() == Scalar(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

void align(RatFunc& a, RatFunc& b) {
    if (a.vars() == b.vars()) return;
    auto ctx = merged_vars(a.vars(), b.vars());
    a = a.in_context(ctx);
    b = b.in_context(ctx);
}

std::vector<std::string> substitution_context(const std::vector<std::string>& target_vars,
                                              const std::map<std::string, RatFunc>& bindings) {
    std::vector<std::string> ctx;
    for (const auto& [name, value] : bindings) ctx = merged_vars(ctx, value.vars());
    for (const auto& v : target_vars)
        if (!bindings.count(v)) ctx = merged_vars(ctx, {v});
    return ctx;
}

RatFunc substitute(const MPoly& target, const std::map<std::string, RatFunc>& bindings) {
    for (const auto& [name, value] : bindings)
        if (!target.has_var(name))
            fail(ErrorCode::VariableMismatch, "bound variable " + name + " not in context");
    auto ctx = substitution_context(target.vars(), bindings);
    const std::size_t nvars = target.vars().size();

    std::vector<RatFunc> values(nvars);
    std::vector<int> maxdeg(nvars, 0);
    for (std::size_t i = 0; i < nvars; ++i) {
        auto it = bindings.find(target.vars()[i]);
        values[i] = it != bindings.end() ? it->second.in_context(ctx)
                                         : RatFunc::var(ctx, target.vars()[i]);
        maxdeg[i] = target.degree_in(target.vars()[i]);
    }

    // Fixed common denominator prod den_i^maxdeg_i; memoized power tables.
    std::vector<std::vector<MPoly>> num_pow(nvars), den_pow(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        num_pow[i].push_back(MPoly::constant(ctx, Scalar(1)));
        den_pow[i].push_back(MPoly::constant(ctx, Scalar(1)));
        for (int k = 1; k <= maxdeg[i]; ++k) {
            num_pow[i].push_back(num_pow[i].back() * values[i].num());
            den_pow[i].push_back(den_pow[i].back() * values[i].den());
        }
    }
    MPoly numerator(ctx);
    for (const auto& [e, c] : target.terms()) {
        MPoly term = MPoly::constant(ctx, c);
        for (std::size_t i = 0; i < nvars; ++i) {
            if (e[i] > 0) term *= num_pow[i][e[i]];
            if (maxdeg[i] - e[i] > 0) term *= den_pow[i][maxdeg[i] - e[i]];
        }
        numerator += term;
    }
    MPoly denominator = MPoly::constant(ctx, Scalar(1));
    for (std::size_t i = 0; i < nvars; ++i)
        if (maxdeg[i] > 0) denominator *= den_pow[i][maxdeg[i]];
    return RatFunc(std::move(numerator), std::move(denominator));
}

RatFunc substitute(const RatFunc& target, const std::map<std::string, RatFunc>& bindings) {
    RatFunc num = substitute(target.num(), bindings);
    RatFunc den = substitute(target.den(), bindings);
    if (den.is_zero())
        fail(ErrorCode::DivisionByZero, "denominator vanishes identically after substitution");
    return num / den;
}

}  // namespace cb
