#include "cb/constructions.hpp"

#include <algorithm>

#include <numeric>

#include "cb/factor.hpp"
#include "cb/sturm.hpp"
#include "cb/sum_of_squares.hpp"

namespace cb {

namespace {

std::string fresh_name(std::string base, const std::vector<std::string>& used) {
    while (std::find(used.begin(), used.end(), base) != used.end()) base += "'";
    return base;
}

Scalar sqrt_or_extension(const Scalar& s, const std::string& what) {
    auto root = s.sqrt();
    if (!root)
        fail(ErrorCode::NeedsExtension, what + ": no tower square root of " + s.to_string());
    return *root;
}

BirationalMap step_map(const Hypersurface& src, const Hypersurface& dst,
                       const std::map<std::string, RatFunc>& forward_bindings,
                       const std::map<std::string, RatFunc>& inverse_bindings,
                       const std::string& name, const std::string& citation) {
    BirationalMap m;
    m.source = src;
    m.target = dst;
    for (const auto& v : dst.vars) m.forward.push_back(forward_bindings.at(v).in_context(src.vars));
    for (const auto& v : src.vars) m.inverse.push_back(inverse_bindings.at(v).in_context(dst.vars));
    m.steps.push_back(MapStep{name, citation, forward_bindings, inverse_bindings});
    return m;
}

void ensure_pass(BirationalMap& m, const std::string& what) {
    m.verified = verify_parametrization(m);
    if (m.verified.state != VerifyState::Pass)
        fail(ErrorCode::Internal, what + ": verification failed: " + m.verified.detail);
}

// deterministic height-ordered rationals: 0, 1, -1, 2, -2, 1/2, -1/2, 3, ...
std::vector<Scalar> height_ordered_rationals(int max_height) {
    std::vector<Scalar> out;
    out.emplace_back(0);
    for (int h = 1; h <= max_height; ++h)
        for (int den = 1; den <= h; ++den) {
            std::vector<int> nums;
            if (den == h)
                for (int n = 1; n <= h; ++n) nums.push_back(n);
            else
                nums.push_back(h);
            for (int n : nums) {
                if (std::gcd(n, den) != 1) continue;
                out.emplace_back(Rat(n, den));
                out.emplace_back(Rat(-n, den));
            }
        }
    return out;
}

MPoly univariate_in(const MPoly& p, const std::string& var, const std::vector<std::string>& ctx) {
    MPoly q = p.in_context(merged_vars(p.vars(), ctx));
    if (!q.is_univariate_in(var))
        fail(ErrorCode::VariableMismatch, "expected a univariate polynomial in " + var);
    return q.in_context(ctx);
}

}  // namespace

BirationalMap parametrize_quadric_with_point(const MPoly& form,
                                             const std::vector<std::string>& fiber_vars,
                                             const std::vector<RatFunc>& point) {
    const std::size_t n = fiber_vars.size();
    if (n < 3 || point.size() != n)
        fail(ErrorCode::VariableMismatch, "quadric parametrization needs matching coordinates");
    std::vector<std::string> ctx = merged_vars(form.vars(), fiber_vars);
    std::vector<std::string> base_vars;
    for (const auto& v : ctx)
        if (std::find(fiber_vars.begin(), fiber_vars.end(), v) == fiber_vars.end())
            base_vars.push_back(v);
    MPoly F = form.in_context(ctx);

    // Q(p) = 0 and grad Q(p) != 0, exactly
    std::map<std::string, RatFunc> at_point;
    for (std::size_t i = 0; i < n; ++i) at_point.emplace(fiber_vars[i], point[i]);
    if (!substitute(F, at_point).is_zero())
        fail(ErrorCode::NotOnQuadric, "the point does not lie on the quadric");
    bool smooth = false;
    for (const auto& v : fiber_vars)
        if (!substitute(F.derivative(v), at_point).is_zero()) smooth = true;
    if (!smooth) fail(ErrorCode::NotSmoothPoint, "the quadric gradient vanishes at the point");

    // source chart: last fiber variable = 1
    const std::string& tvar = fiber_vars[n - 1];
    std::vector<std::string> source_vars(fiber_vars.begin(), fiber_vars.end() - 1);
    for (const auto& v : base_vars) source_vars.push_back(v);
    MPoly eq = F.set_vars({{tvar, Scalar(1)}}).in_context(source_vars);
    std::string reduction;
    for (const auto& v : fiber_vars)
        if (eq.degree_in(v) >= 2) {
            reduction = v;
            break;
        }
    if (reduction.empty()) reduction = source_vars.front();
    Hypersurface source = Hypersurface::of(source_vars, eq, reduction);

    // target: fresh parameters then base variables
    std::vector<std::string> target_vars;
    for (std::size_t i = 0; i + 2 < n; ++i)
        target_vars.push_back(fresh_name("s" + std::to_string(i + 1), ctx));
    for (const auto& v : base_vars) target_vars.push_back(v);
    Hypersurface target = Hypersurface::affine_space(target_vars);

    // embed source points projectively: x_t = 1
    std::vector<RatFunc> x_embed;
    for (std::size_t i = 0; i < n; ++i)
        x_embed.push_back(i + 1 == n ? RatFunc::from_scalar(source_vars, Scalar(1))
                                     : RatFunc::var(source_vars, fiber_vars[i]));

    for (std::size_t j = 0; j < n; ++j) {
        if (point[j].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            // forward: u_i = (p_j x_i - x_j p_i) / (p_j x_k - x_j p_k), i not in {j, k}
            RatFunc pj = point[j].in_context(source_vars);
            RatFunc denom = pj * x_embed[k] - x_embed[j] * point[k].in_context(source_vars);
            if (denom.is_zero()) continue;
            BirationalMap m;
            m.source = source;
            m.target = target;
            bool bad = false;
            for (std::size_t i = 0; i < n && !bad; ++i) {
                if (i == j || i == k) continue;
                RatFunc numer = pj * x_embed[i] - x_embed[j] * point[i].in_context(source_vars);
                m.forward.push_back((numer / denom).in_context(source_vars));
            }
            for (const auto& v : base_vars) m.forward.push_back(RatFunc::var(source_vars, v));

            // inverse: residual intersection of the line through p and h
            std::vector<RatFunc> h(n);
            std::size_t param = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == j)
                    h[i] = RatFunc::from_scalar(target_vars, Scalar(0));
                else if (i == k)
                    h[i] = RatFunc::from_scalar(target_vars, Scalar(1));
                else
                    h[i] = RatFunc::var(target_vars, target_vars[param++]);
            }
            std::map<std::string, RatFunc> at_h, at_ph;
            std::vector<RatFunc> p_target;
            for (std::size_t i = 0; i < n; ++i) p_target.push_back(point[i].in_context(target_vars));
            for (std::size_t i = 0; i < n; ++i) {
                at_h.emplace(fiber_vars[i], h[i]);
                at_ph.emplace(fiber_vars[i], h[i] + p_target[i]);
            }
            MPoly Ft = F.in_context(merged_vars(ctx, target_vars));
            RatFunc Qh = substitute(Ft, at_h);
            RatFunc B = (substitute(Ft, at_ph) - Qh) / RatFunc::from_scalar(target_vars, Scalar(2));
            std::vector<RatFunc> y(n);
            RatFunc two = RatFunc::from_scalar(target_vars, Scalar(2));
            for (std::size_t i = 0; i < n; ++i) y[i] = Qh * p_target[i] - two * B * h[i];
            if (y[n - 1].is_zero()) continue;
            for (std::size_t i = 0; i + 1 < n; ++i) m.inverse.push_back((y[i] / y[n - 1]).in_context(target_vars));
            for (const auto& v : base_vars) m.inverse.push_back(RatFunc::var(target_vars, v));

            m.steps.push_back(MapStep{"stereographic", "quadric with a smooth point", {}, {}});
            m.verified = verify_parametrization(m);
            if (m.verified.state == VerifyState::Pass) return m;
        }
    }
    fail(ErrorCode::Internal, "no projection chart produced a verified parametrization");
}

Elem2Shape resolve_elem2_shape(const MPoly& q1_in, const MPoly& q2_in,
                               const std::string& base_var) {
    std::vector<std::string> ctx{base_var};
    MPoly q1 = univariate_in(q1_in, base_var, ctx);
    MPoly q2 = univariate_in(q2_in, base_var, ctx);
    if (q1.is_zero()) fail(ErrorCode::PrecondViolated, "q1 must be nonzero");
    if (q1.degree_in(base_var) > 2 || q2.degree_in(base_var) > 2)
        fail(ErrorCode::PrecondViolated, "q1 and q2 must have degree at most two");
    auto coeff = [&](const MPoly& p, int k) {
        auto cs = p.coeffs_in(base_var);
        return k < static_cast<int>(cs.size()) ? cs[static_cast<std::size_t>(k)].constant_value()
                                               : Scalar(0);
    };
    Scalar p2 = coeff(q1, 2), p1 = coeff(q1, 1), p0 = coeff(q1, 0);
    Scalar r2 = coeff(q2, 2), r1 = coeff(q2, 1), r0 = coeff(q2, 0);
    bool blocked_by_tower = false;

    auto build = [&](const Scalar& a, const Scalar& alpha, const Scalar& beta)
        -> std::optional<Elem2Shape> {
        // verify q2 == a*q1 - (alpha*v + beta)^2 exactly
        MPoly v = MPoly::variable(ctx, base_var);
        MPoly l3 = v * alpha + MPoly::constant(ctx, beta);
        if (q1 * a - l3 * l3 == q2) return Elem2Shape{a, l3};
        return std::nullopt;
    };
    auto try_sqrt = [&](const Scalar& s) -> std::optional<Scalar> {
        if (!s.is_real() || s.sign() < 0) return std::nullopt;
        auto root = s.sqrt();
        if (!root) {
            blocked_by_tower = true;
            return std::nullopt;
        }
        return root;
    };

    if (!p2.is_zero()) {
        // alpha = 0 branch: a determined by the quadratic coefficients
        {
            Scalar a = r2 / p2;
            Scalar beta_sq = a * p0 - r0;
            if (auto beta = try_sqrt(beta_sq)) {
                if (auto shape = build(a, Scalar(0), *beta)) return *shape;
                if (auto shape = build(a, Scalar(0), -*beta)) return *shape;
            }
        }
        // alpha != 0: T = alpha^2 satisfies a quadratic with these coefficients
        Scalar A = p2 * p2 * p0 * Scalar(4) - p2 * p1 * p1;
        Scalar B = Scalar(4) * p2 * p2 * (p0 * r2 - r0 * p2) -
                   Scalar(2) * p2 * p1 * (p1 * r2 - r1 * p2);
        Scalar C = -p2 * (p1 * r2 - r1 * p2) * (p1 * r2 - r1 * p2);
        std::vector<Scalar> roots;
        if (A.is_zero() && B.is_zero() && C.is_zero()) {
            roots.push_back(Scalar(1));  // degenerate: a one-parameter family
        } else {
            try {
                for (const auto& t : solve_quadratic(A, B, C))
                    if (t.is_real() && t.sign() > 0) roots.push_back(t);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::NeedsExtension) blocked_by_tower = true;
                else if (e.code() != ErrorCode::DivisionByZero) throw;
            }
        }
        for (const auto& t : roots) {
            auto alpha = try_sqrt(t);
            if (!alpha || alpha->is_zero()) continue;
            Scalar a = (r2 + t) / p2;
            Scalar beta = (p1 * (r2 + t) - r1 * p2) / (Scalar(2) * *alpha * p2);
            if (auto shape = build(a, *alpha, beta)) return *shape;
            if (auto shape = build(a, -*alpha, -beta)) return *shape;
        }
    } else if (!p1.is_zero()) {
        Scalar t = -r2;  // alpha^2 = -q2_2
        if (t.is_real() && t.sign() >= 0) {
            if (auto alpha0 = try_sqrt(t)) {
                for (const Scalar& alpha : {*alpha0, -*alpha0}) {
                    // beta from the constant coefficient once a is eliminated
                    // q2_0 = a*q1_0 - beta^2 with a = (r1 + 2*alpha*beta)/p1
                    // => beta^2 - (2*alpha*p0/p1)*beta + (r0 - r1*p0/p1) = 0
                    try {
                        for (const auto& beta :
                             solve_quadratic(Scalar(1), -Scalar(2) * alpha * p0 / p1,
                                             r0 - r1 * p0 / p1)) {
                            if (!beta.is_real()) continue;
                            Scalar a = (r1 + Scalar(2) * alpha * beta) / p1;
                            if (auto shape = build(a, alpha, beta)) return *shape;
                        }
                    } catch (const Error& e) {
                        if (e.code() == ErrorCode::NeedsExtension) blocked_by_tower = true;
                        else throw;
                    }
                    if (alpha.is_zero()) break;
                }
            }
        }
    } else {
        // q1 constant
        Scalar t = -r2;
        if (t.is_real() && t.sign() >= 0) {
            if (auto alpha = try_sqrt(t)) {
                if (!alpha->is_zero()) {
                    Scalar beta = -r1 / (Scalar(2) * *alpha);
                    Scalar a = (r0 + beta * beta) / p0;
                    if (auto shape = build(a, *alpha, beta)) return *shape;
                } else if (r1.is_zero()) {
                    // alpha = 0 and any beta works with a = (r0 + beta^2)/p0
                    Scalar a = r0 / p0;
                    if (auto shape = build(a, Scalar(0), Scalar(0))) return *shape;
                }
            }
        }
    }
    if (blocked_by_tower)
        fail(ErrorCode::NeedsExtension,
             "the (a, l3) shape exists only beyond one quadratic extension");
    fail(ErrorCode::HypothesisViolated,
         "q2 is not of the form a*q1 - l3^2 over the reals: the bundle shape obstruction applies");
}

namespace {

// sign of a nonzero univariate polynomial that never changes sign
int constant_sign(const MPoly& q, const std::string& var) {
    for (int k = 0; k < 8; ++k) {
        Scalar at = Scalar(k % 2 == 0 ? k / 2 : -(k + 1) / 2);
        Scalar val = q.set_vars({{var, at}}).constant_value();
        if (!val.is_zero()) return val.sign();
    }
    fail(ErrorCode::Internal, "could not sample a nonzero value");
}

bool sign_changes(const MPoly& q1, const std::string& var) {
    int d = q1.degree_in(var);
    if (d <= 0) return false;
    if (d == 1) return true;
    auto cs = q1.coeffs_in(var);
    Scalar disc = cs[1].constant_value() * cs[1].constant_value() -
                  Scalar(4) * cs[2].constant_value() * cs[0].constant_value();
    return disc.sign() > 0;
}

// search for an affine point (w, x1, y1, v) on w^2 + eps*(x1^2+y1^2) + q2(v) = 0
// with nonvanishing gradient
std::optional<std::array<Scalar, 4>> branch_a_point(int eps, const MPoly& q2,
                                                    const std::string& var) {
    auto q2_at = [&](const Scalar& v0) { return q2.set_vars({{var, v0}}).constant_value(); };
    auto q2d = q2.derivative(var);
    for (const auto& v0 : height_ordered_rationals(20)) {
        Scalar c = q2_at(v0);
        if (eps < 0) {
            // w^2 - x1^2 - y1^2 + c = 0
            if (c.is_zero()) {
                if (!q2d.set_vars({{var, v0}}).constant_value().is_zero())
                    return std::array<Scalar, 4>{Scalar(0), Scalar(0), Scalar(0), v0};
                continue;
            }
            Scalar w = (Scalar(1) - c) / Scalar(2);
            Scalar x1 = (Scalar(-1) - c) / Scalar(2);
            return std::array<Scalar, 4>{w, x1, Scalar(0), v0};
        }
        // w^2 + x1^2 + y1^2 = -c
        Scalar target = -c;
        if (!target.is_real()) continue;
        int sign = target.sign();
        if (sign < 0) continue;
        if (sign == 0) {
            if (!q2d.set_vars({{var, v0}}).constant_value().is_zero())
                return std::array<Scalar, 4>{Scalar(0), Scalar(0), Scalar(0), v0};
            continue;
        }
        if (auto root = target.sqrt())
            return std::array<Scalar, 4>{*root, Scalar(0), Scalar(0), v0};
        // three-square search at small heights
        for (const auto& s1 : height_ordered_rationals(6)) {
            Scalar rest = target - s1 * s1;
            if (rest.sign() < 0) continue;
            if (auto root = rest.sqrt())
                return std::array<Scalar, 4>{*root, s1, Scalar(0), v0};
        }
    }
    return std::nullopt;
}

}  // namespace

BirationalMap elem2_parametrize(const MPoly& q1_in, const Scalar& a, const MPoly& l3_in,
                                const Elem2Vars& names,
                                const std::optional<std::array<Scalar, 4>>& point_hint) {
    std::vector<std::string> base_ctx{names.base};
    MPoly q1 = univariate_in(q1_in, names.base, base_ctx);
    MPoly l3 = univariate_in(l3_in, names.base, base_ctx);
    if (q1.is_zero()) fail(ErrorCode::PrecondViolated, "q1 must be nonzero");
    if (q1.degree_in(names.base) > 2 || l3.degree_in(names.base) > 1)
        fail(ErrorCode::PrecondViolated, "degree bounds: deg q1 <= 2, deg l3 <= 1");
    MPoly q2 = q1 * a - l3 * l3;

    std::vector<std::string> svars{names.w, names.x, names.y, names.base};
    MPoly w = MPoly::variable(svars, names.w), x = MPoly::variable(svars, names.x),
          y = MPoly::variable(svars, names.y);
    MPoly q1s = q1.in_context(svars), q2s = q2.in_context(svars);
    Hypersurface source = Hypersurface::of(svars, w * w + q1s * (x * x + y * y) + q2s, names.w);

    if (!sign_changes(q1, names.base)) {
        // constant sign: q1 = eps*(l1^2 + l2^2)
        int eps = constant_sign(q1, names.base);
        auto cs = q1.coeffs_in(names.base);
        Scalar alpha = cs.size() > 2 ? cs[2].constant_value() : Scalar(0);
        Scalar beta = cs.size() > 1 ? cs[1].constant_value() : Scalar(0);
        Scalar gamma = cs[0].constant_value();
        MPoly v = MPoly::variable(base_ctx, names.base);
        MPoly l1(base_ctx), l2(base_ctx);
        if (alpha.is_zero()) {
            l1 = MPoly::constant(base_ctx, sqrt_or_extension(gamma.abs(), "norm split"));
            l2 = MPoly(base_ctx);
        } else {
            Scalar root_alpha = sqrt_or_extension(alpha.abs(), "norm split");
            Scalar eps_s(eps);
            l1 = (v + MPoly::constant(base_ctx, eps_s * beta / (Scalar(2) * alpha.abs()))) *
                 root_alpha;
            Scalar tail = eps_s * gamma - beta * beta / (Scalar(4) * alpha.abs());
            l2 = MPoly::constant(base_ctx, sqrt_or_extension(tail, "norm split"));
        }
        // substitution x1 = x*l1 + y*l2, y1 = x*l2 - y*l1
        std::string x1n = fresh_name(names.x + "'", svars);
        std::string y1n = fresh_name(names.y + "'", svars);
        std::vector<std::string> tvars{names.w, x1n, y1n, names.base};
        MPoly wt = MPoly::variable(tvars, names.w), x1 = MPoly::variable(tvars, x1n),
              y1 = MPoly::variable(tvars, y1n);
        MPoly eq1 = wt * wt + (x1 * x1 + y1 * y1) * Scalar(eps) + q2.in_context(tvars);
        Hypersurface middle = Hypersurface::of(tvars, eq1, names.w);

        MPoly l1s = l1.in_context(svars), l2s = l2.in_context(svars);
        MPoly l1t = l1.in_context(tvars), l2t = l2.in_context(tvars);
        MPoly norm_t = l1t * l1t + l2t * l2t;
        std::map<std::string, RatFunc> fwd{
            {names.w, RatFunc::var(svars, names.w)},
            {x1n, RatFunc(x * l1s + y * l2s)},
            {y1n, RatFunc(x * l2s - y * l1s)},
            {names.base, RatFunc::var(svars, names.base)}};
        std::map<std::string, RatFunc> inv{
            {names.w, RatFunc::var(tvars, names.w)},
            {names.x, RatFunc(x1 * l1t + y1 * l2t, norm_t)},
            {names.y, RatFunc(x1 * l2t - y1 * l1t, norm_t)},
            {names.base, RatFunc::var(tvars, names.base)}};
        BirationalMap split =
            step_map(source, middle, fwd, inv, "norm-split", "constant-sign base form");

        // the middle chart is a quadric in A^4: homogenize q2 over (base, T)
        std::string tn = fresh_name("t", tvars);
        std::vector<std::string> fiber{names.w, x1n, y1n, names.base, tn};
        auto q2cs = q2.coeffs_in(names.base);
        auto pick = [&](std::size_t k) {
            return k < q2cs.size() ? q2cs[k].constant_value() : Scalar(0);
        };
        MPoly wf = MPoly::variable(fiber, names.w), x1f = MPoly::variable(fiber, x1n),
              y1f = MPoly::variable(fiber, y1n), vf = MPoly::variable(fiber, names.base),
              tf = MPoly::variable(fiber, tn);
        MPoly form = wf * wf + (x1f * x1f + y1f * y1f) * Scalar(eps) + vf * vf * pick(2) +
                     vf * tf * pick(1) + tf * tf * pick(0);

        std::array<Scalar, 4> pt{};
        if (point_hint) {
            // transport the hint through the norm split
            const auto& h = *point_hint;
            Scalar l1v = l1.set_vars({{names.base, h[3]}}).constant_value();
            Scalar l2v = l2.set_vars({{names.base, h[3]}}).constant_value();
            pt = {h[0], h[1] * l1v + h[2] * l2v, h[1] * l2v - h[2] * l1v, h[3]};
        } else {
            auto found = branch_a_point(eps, q2, names.base);
            if (!found)
                fail(ErrorCode::NoSmoothPointFound,
                     "no rational point found on the constant-sign model within the search bound");
            pt = *found;
        }
        std::vector<RatFunc> point;
        for (const auto& c : pt) point.push_back(RatFunc::from_scalar({}, c));
        point.push_back(RatFunc::from_scalar({}, Scalar(1)));
        BirationalMap stereo = parametrize_quadric_with_point(form, fiber, point);
        BirationalMap out = compose(split, stereo);
        ensure_pass(out, "elem2 constant-sign parametrization");
        return out;
    }

    // sign change: separate the roots of q1 to 0 and infinity
    auto cs = q1.coeffs_in(names.base);
    Scalar alpha = cs.size() > 2 ? cs[2].constant_value() : Scalar(0);
    Scalar beta = cs.size() > 1 ? cs[1].constant_value() : Scalar(0);
    Scalar gamma = cs[0].constant_value();
    // M acts on [v : s]; q1h composed with M^{-1} equals u*r exactly
    std::array<std::array<Scalar, 2>, 2> M;
    if (!alpha.is_zero()) {
        Scalar disc = beta * beta - Scalar(4) * alpha * gamma;
        Scalar rt = sqrt_or_extension(disc, "root separation");
        Scalar root1 = (-beta + rt) / (Scalar(2) * alpha);
        Scalar root2 = (-beta - rt) / (Scalar(2) * alpha);
        M = {{{Scalar(1), -root1}, {alpha, -alpha * root2}}};
    } else {
        M = {{{beta, gamma}, {Scalar(0), Scalar(1)}}};
    }
    Scalar l3a = l3.degree_in(names.base) >= 1 ? l3.coeffs_in(names.base)[1].constant_value()
                                               : Scalar(0);
    Scalar l3b = l3.coeffs_in(names.base)[0].constant_value();
    auto compute_L = [&](const std::array<std::array<Scalar, 2>, 2>& mat) {
        Scalar det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0];
        Scalar i00 = mat[1][1] / det, i01 = -mat[0][1] / det;
        Scalar i10 = -mat[1][0] / det, i11 = mat[0][0] / det;
        // l3h(v, s) = l3a*v + l3b*s at (v, s) = M^{-1}(u, r)
        return std::array<Scalar, 6>{l3a * i00 + l3b * i10, l3a * i01 + l3b * i11,
                                     i00, i01, i10, i11};
    };
    auto L = compute_L(M);
    if (L[0].is_zero() && !L[1].is_zero()) {
        // exchange u and r so l4 depends on u
        std::array<std::array<Scalar, 2>, 2> swapped{{{M[1][0], M[1][1]}, {M[0][0], M[0][1]}}};
        M = swapped;
        L = compute_L(M);
    }
    Scalar e = L[0], l4_const = L[1];
    Scalar i00 = L[2], i01 = L[3], i10 = L[4], i11 = L[5];

    std::string wpn = fresh_name(names.w + "'", svars);
    std::string un = fresh_name("u", svars);
    std::vector<std::string> t1vars{wpn, names.x, names.y, un};
    MPoly wp = MPoly::variable(t1vars, wpn), xt = MPoly::variable(t1vars, names.x),
          yt = MPoly::variable(t1vars, names.y), u = MPoly::variable(t1vars, un);
    MPoly l4 = u * e + MPoly::constant(t1vars, l4_const);
    MPoly aeq = wp * wp + u * (xt * xt + yt * yt) + u * a - l4 * l4;
    Hypersurface t1 = Hypersurface::of(t1vars, aeq, wpn);

    // u(v) = (M00 v + M01)/(M10 v + M11); w' = w/(M10 v + M11)
    MPoly vs = MPoly::variable(svars, names.base);
    MPoly num_u = vs * M[0][0] + MPoly::constant(svars, M[0][1]);
    MPoly den_u = vs * M[1][0] + MPoly::constant(svars, M[1][1]);
    MPoly ut = MPoly::variable(t1vars, un);
    MPoly num_v = ut * i00 + MPoly::constant(t1vars, i01);
    MPoly den_v = ut * i10 + MPoly::constant(t1vars, i11);
    std::map<std::string, RatFunc> fwd{{wpn, RatFunc(MPoly::variable(svars, names.w), den_u)},
                                       {names.x, RatFunc::var(svars, names.x)},
                                       {names.y, RatFunc::var(svars, names.y)},
                                       {un, RatFunc(num_u, den_u)}};
    std::map<std::string, RatFunc> inv{{names.w, RatFunc(wp, den_v)},
                                       {names.x, RatFunc::var(t1vars, names.x)},
                                       {names.y, RatFunc::var(t1vars, names.y)},
                                       {names.base, RatFunc(num_v, den_v)}};
    BirationalMap reparam =
        step_map(source, t1, fwd, inv, "reparametrize-base", "roots of q1 to zero and infinity");

    if (e.is_zero()) {
        // l4 = 0: solve for u directly
        std::vector<std::string> avars{wpn, names.x, names.y};
        Hypersurface target = Hypersurface::affine_space(avars);
        MPoly wa = MPoly::variable(avars, wpn), xa = MPoly::variable(avars, names.x),
              ya = MPoly::variable(avars, names.y);
        std::map<std::string, RatFunc> f2{{wpn, RatFunc::var(t1vars, wpn)},
                                          {names.x, RatFunc::var(t1vars, names.x)},
                                          {names.y, RatFunc::var(t1vars, names.y)}};
        std::map<std::string, RatFunc> i2{
            {wpn, RatFunc::var(avars, wpn)},
            {names.x, RatFunc::var(avars, names.x)},
            {names.y, RatFunc::var(avars, names.y)},
            {un, RatFunc(-(wa * wa), xa * xa + ya * ya + MPoly::constant(avars, a))}};
        BirationalMap solve = step_map(t1, target, f2, i2, "solve-base", "linear in the base");
        BirationalMap out = compose(reparam, solve);
        ensure_pass(out, "elem2 sign-change parametrization (linear)");
        return out;
    }

    // l4 of degree one: a*u - l4^2 = -e^2 (u - c)^2 + f
    Scalar cc = (a - Scalar(2) * e * l4_const) / (Scalar(2) * e * e);
    Scalar ff = e * e * cc * cc - l4_const * l4_const;
    std::string u1n = fresh_name("u'", t1vars);
    std::vector<std::string> t2vars{wpn, names.x, names.y, u1n};
    MPoly wp2 = MPoly::variable(t2vars, wpn), x2 = MPoly::variable(t2vars, names.x),
          y2 = MPoly::variable(t2vars, names.y), u1 = MPoly::variable(t2vars, u1n);
    MPoly eq2 = wp2 * wp2 + (u1 + MPoly::constant(t2vars, cc)) * (x2 * x2 + y2 * y2) -
                u1 * u1 * (e * e) + MPoly::constant(t2vars, ff);
    Hypersurface t2 = Hypersurface::of(t2vars, eq2, wpn);
    std::map<std::string, RatFunc> f3{{wpn, RatFunc::var(t1vars, wpn)},
                                      {names.x, RatFunc::var(t1vars, names.x)},
                                      {names.y, RatFunc::var(t1vars, names.y)},
                                      {u1n, RatFunc(ut - MPoly::constant(t1vars, cc))}};
    std::map<std::string, RatFunc> i3{{wpn, RatFunc::var(t2vars, wpn)},
                                      {names.x, RatFunc::var(t2vars, names.x)},
                                      {names.y, RatFunc::var(t2vars, names.y)},
                                      {un, RatFunc(u1 + MPoly::constant(t2vars, cc))}};
    BirationalMap recenter = step_map(t1, t2, f3, i3, "recenter", "complete the square");

    // w2 = w' - G, u2 = w' + G with G = e*u1 - (x^2+y^2)/(2e)
    std::string w2n = fresh_name(names.w + "''", t2vars);
    std::string u2n = fresh_name("u''", t2vars);
    std::vector<std::string> t3vars{w2n, names.x, names.y, u2n};
    MPoly w2v = MPoly::variable(t3vars, w2n), x3 = MPoly::variable(t3vars, names.x),
          y3 = MPoly::variable(t3vars, names.y), u2 = MPoly::variable(t3vars, u2n);
    MPoly sum_sq2 = x2 * x2 + y2 * y2;
    RatFunc G(u1 * e * (Scalar(2) * e) - sum_sq2, MPoly::constant(t2vars, Scalar(2) * e));
    MPoly sum_sq3 = x3 * x3 + y3 * y3;
    MPoly h = sum_sq3 * sum_sq3 * (Scalar(1) / (Scalar(4) * e * e)) + sum_sq3 * cc +
              MPoly::constant(t3vars, ff);
    Hypersurface t3 = Hypersurface::of(t3vars, w2v * u2 + h, w2n);
    RatFunc wp_r = RatFunc::var(t2vars, wpn);
    std::map<std::string, RatFunc> f4{{w2n, wp_r - G},
                                      {names.x, RatFunc::var(t2vars, names.x)},
                                      {names.y, RatFunc::var(t2vars, names.y)},
                                      {u2n, wp_r + G}};
    RatFunc half = RatFunc::from_scalar(t3vars, Scalar(1, 2));
    RatFunc w2r = RatFunc(w2v), u2r = RatFunc(u2);
    std::map<std::string, RatFunc> i4{
        {wpn, (w2r + u2r) * half},
        {names.x, RatFunc::var(t3vars, names.x)},
        {names.y, RatFunc::var(t3vars, names.y)},
        {u1n, ((u2r - w2r) * half + RatFunc(sum_sq3, MPoly::constant(t3vars, Scalar(2) * e))) /
                  RatFunc::from_scalar(t3vars, e)}};
    BirationalMap split = step_map(t2, t3, f4, i4, "split-square", "difference of squares");

    std::vector<std::string> avars{w2n, names.x, names.y};
    Hypersurface target = Hypersurface::affine_space(avars);
    MPoly wa = MPoly::variable(avars, w2n), xa = MPoly::variable(avars, names.x),
          ya = MPoly::variable(avars, names.y);
    MPoly ha = sum_sq3.in_context(avars);
    ha = ha * ha * (Scalar(1) / (Scalar(4) * e * e)) + sum_sq3.in_context(avars) * cc +
         MPoly::constant(avars, ff);
    std::map<std::string, RatFunc> f5{{w2n, RatFunc::var(t3vars, w2n)},
                                      {names.x, RatFunc::var(t3vars, names.x)},
                                      {names.y, RatFunc::var(t3vars, names.y)}};
    std::map<std::string, RatFunc> i5{{w2n, RatFunc::var(avars, w2n)},
                                      {names.x, RatFunc::var(avars, names.x)},
                                      {names.y, RatFunc::var(avars, names.y)},
                                      {u2n, RatFunc(-ha, wa)}};
    BirationalMap solve = step_map(t3, target, f5, i5, "solve-base", "hyperbola section");

    BirationalMap out = compose(compose(compose(reparam, recenter), split), solve);
    ensure_pass(out, "elem2 sign-change parametrization");
    return out;
}

BirationalMap construct_case_a(const MPoly& q_in, const MPoly& c_in, const MPoly& g_in) {
    std::vector<std::string> wctx{"w"};
    MPoly q = univariate_in(q_in, "w", wctx);
    MPoly c = univariate_in(c_in, "w", wctx);
    MPoly g = univariate_in(g_in, "w", wctx);
    if (q.degree_in("w") > 2 || c.degree_in("w") > 3 || g.degree_in("w") > 4)
        fail(ErrorCode::PrecondViolated, "degree bounds: deg q <= 2, deg c <= 3, deg g <= 4");
    if (q.is_zero() && c.is_zero() && g.is_zero())
        fail(ErrorCode::PrecondViolated, "the fiber polynomial vanishes identically");

    // rational slice z = z0 with p(w) = q z0^2 + c z0 + g nonzero nonnegative
    std::optional<Scalar> chosen;
    MPoly slice(wctx);
    for (const auto& z0 : height_ordered_rationals(20)) {
        if (z0.is_zero()) continue;
        MPoly p = q * (z0 * z0) + c * z0 + g;
        if (p.is_zero()) continue;
        if (auto witness = negative_value_witness(p))
            fail(ErrorCode::NotNonnegative, "f(w, z) is negative at w = " + witness->to_string() +
                                                ", z = " + z0.to_string());
        chosen = z0;
        slice = p;
        break;
    }
    if (!chosen) fail(ErrorCode::NoSmoothPointFound, "no usable slice z = z0 within the bound");

    TwoSquares sos = sum_of_two_squares(slice);

    // quadric x^2 + y^2 - q z^2 - c z t - g t^2 over the w-line
    std::vector<std::string> fiber{"x", "y", "z", "t"};
    std::vector<std::string> ctx = merged_vars(fiber, wctx);
    MPoly xf = MPoly::variable(ctx, "x"), yf = MPoly::variable(ctx, "y"),
          zf = MPoly::variable(ctx, "z"), tf = MPoly::variable(ctx, "t");
    MPoly form = xf * xf + yf * yf - q.in_context(ctx) * zf * zf - c.in_context(ctx) * zf * tf -
                 g.in_context(ctx) * tf * tf;
    std::vector<RatFunc> point{RatFunc(sos.a.in_context(wctx)), RatFunc(sos.b.in_context(wctx)),
                               RatFunc::from_scalar(wctx, *chosen),
                               RatFunc::from_scalar(wctx, Scalar(1))};
    BirationalMap m = parametrize_quadric_with_point(form, fiber, point);
    MapStep note{"slice-and-split",
                 "nonnegative slice admits a sum of two squares",
                 {{"z0", RatFunc::from_scalar(wctx, *chosen)}},
                 {}};
    m.steps.insert(m.steps.begin(), note);
    ensure_pass(m, "case (a) construction");
    return m;
}

BirationalMap construct_case_b(const NormalForm& nf) {
    if (nf.variant != NFVariant::F1)
        fail(ErrorCode::PrecondViolated, "case (b) consumes the all-real-node record");
    if (nf.a1.is_zero() || nf.a2.is_zero())
        fail(ErrorCode::PrecondViolated, "a1 and a2 must be nonzero for an irreducible curve");
    Scalar eps(nf.epsilon);
    std::vector<std::string> vctx{"v"};
    MPoly v = MPoly::variable(vctx, "v");
    MPoly q = v * v + v * (eps * nf.c) - MPoly::constant(vctx, eps * nf.a2);
    Scalar b1 = nf.b / Scalar(2), d1 = nf.d / Scalar(2);
    MPoly lshift = (v * v * b1 + v * d1) * eps;  // eps*(b1 v^2 + d1 v)

    // source: x^2 + y^2 = f(v, w) in the chart z = 1
    std::vector<std::string> xs{"x", "y", "v", "w"};
    MPoly X = MPoly::variable(xs, "x"), Y = MPoly::variable(xs, "y"),
          V = MPoly::variable(xs, "v"), W = MPoly::variable(xs, "w");
    MPoly f_affine = V * V * W * W * eps - V * V * nf.a1 - W * W * nf.a2 +
                     V * W * (V * nf.b + W * nf.c + MPoly::constant(xs, nf.d));
    Hypersurface source = Hypersurface::of(xs, X * X + Y * Y - f_affine, "x");

    // step 1: w1 = w + eps*(b1 v^2 + d1 v)/q(v)
    std::vector<std::string> s1v{"x", "y", "v", "w1"};
    MPoly X1 = MPoly::variable(s1v, "x"), Y1 = MPoly::variable(s1v, "y"),
          V1 = MPoly::variable(s1v, "v"), W1 = MPoly::variable(s1v, "w1");
    MPoly q1ctx = q.in_context(s1v);
    MPoly lin = (V1 * b1 + MPoly::constant(s1v, d1));
    MPoly s1eq = q1ctx * (X1 * X1 + Y1 * Y1 + V1 * V1 * nf.a1) +
                 V1 * V1 * lin * lin * eps - q1ctx * q1ctx * W1 * W1 * eps;
    Hypersurface s1 = Hypersurface::of(s1v, s1eq, "x");
    std::map<std::string, RatFunc> f1{{"x", RatFunc::var(xs, "x")},
                                      {"y", RatFunc::var(xs, "y")},
                                      {"v", RatFunc::var(xs, "v")},
                                      {"w1", RatFunc(W) + RatFunc(lshift.in_context(xs), q.in_context(xs))}};
    std::map<std::string, RatFunc> i1{
        {"x", RatFunc::var(s1v, "x")},
        {"y", RatFunc::var(s1v, "y")},
        {"v", RatFunc::var(s1v, "v")},
        {"w", RatFunc(W1) - RatFunc(lshift.in_context(s1v), q.in_context(s1v))}};
    BirationalMap shift = step_map(source, s1, f1, i1, "w1-shift", "kill the mixed term");

    // step 2: projective fiber rescale to the elem2 shape
    MPoly q1_base = -q * eps;                    // q1 = -eps*q
    MPoly l3_base = v * b1 + MPoly::constant(vctx, d1);
    MPoly q2_base = q1_base * nf.a1 - l3_base * l3_base;
    std::vector<std::string> s2v{"w2", "x2", "y2", "v"};
    MPoly W2 = MPoly::variable(s2v, "w2"), X2 = MPoly::variable(s2v, "x2"),
          Y2 = MPoly::variable(s2v, "y2"), V2 = MPoly::variable(s2v, "v");
    MPoly s2eq = W2 * W2 + q1_base.in_context(s2v) * (X2 * X2 + Y2 * Y2) + q2_base.in_context(s2v);
    Hypersurface s2 = Hypersurface::of(s2v, s2eq, "w2");
    std::map<std::string, RatFunc> f2{
        {"w2", RatFunc(q.in_context(s1v) * W1, V1)},
        {"x2", RatFunc(X1, V1)},
        {"y2", RatFunc(Y1, V1)},
        {"v", RatFunc::var(s1v, "v")}};
    std::map<std::string, RatFunc> i2{
        {"x", RatFunc(V2 * X2)},
        {"y", RatFunc(V2 * Y2)},
        {"v", RatFunc::var(s2v, "v")},
        {"w1", RatFunc(V2 * W2, q.in_context(s2v))}};
    BirationalMap rescale = step_map(s1, s2, f2, i2, "multiply-by-q", "rescale fibers by q and v");

    BirationalMap tail = elem2_parametrize(q1_base, nf.a1, l3_base, {"w2", "x2", "y2", "v"});
    BirationalMap out = compose(compose(shift, rescale), tail);
    ensure_pass(out, "case (b) construction");
    return out;
}

BirationalMap construct_case_c(const NormalForm& nf) {
    if (nf.variant != NFVariant::F2)
        fail(ErrorCode::PrecondViolated, "case (c) consumes the conjugate-pair record");
    if (nf.b.is_zero() && nf.c.is_zero() && nf.d.is_zero())
        fail(ErrorCode::PrecondViolated, "q(v) = b v^2 + d v + c must be nonzero");
    Scalar eps(nf.epsilon);
    std::vector<std::string> vctx{"v"};
    MPoly v = MPoly::variable(vctx, "v");
    MPoly q = v * v * nf.b + v * nf.d + MPoly::constant(vctx, nf.c);
    MPoly disc = v * v + MPoly::constant(vctx, Scalar(1));  // v^2 + 1

    // source: x^2 + y^2 = f(v, z) in the chart w = 1
    std::vector<std::string> xs{"x", "y", "v", "z"};
    MPoly X = MPoly::variable(xs, "x"), Y = MPoly::variable(xs, "y"),
          V = MPoly::variable(xs, "v"), Z = MPoly::variable(xs, "z");
    MPoly disc_s = disc.in_context(xs);
    MPoly f_affine = disc_s * disc_s * eps + Z * (V * nf.a1 + MPoly::constant(xs, nf.a2)) * disc_s +
                     Z * Z * q.in_context(xs);
    Hypersurface source = Hypersurface::of(xs, X * X + Y * Y - f_affine, "x");

    // step 1: z1 = q(v) z, multiply the equation by q
    std::vector<std::string> s1v{"x", "y", "v", "z1"};
    MPoly X1 = MPoly::variable(s1v, "x"), Y1 = MPoly::variable(s1v, "y"),
          V1 = MPoly::variable(s1v, "v"), Z1 = MPoly::variable(s1v, "z1");
    MPoly disc1 = disc.in_context(s1v);
    MPoly q1ctx = q.in_context(s1v);
    MPoly s1eq = q1ctx * (X1 * X1 + Y1 * Y1) - Z1 * Z1 -
                 Z1 * (V1 * nf.a1 + MPoly::constant(s1v, nf.a2)) * disc1 -
                 disc1 * disc1 * q1ctx * eps;
    Hypersurface s1 = Hypersurface::of(s1v, s1eq, "x");
    std::map<std::string, RatFunc> fA{{"x", RatFunc::var(xs, "x")},
                                      {"y", RatFunc::var(xs, "y")},
                                      {"v", RatFunc::var(xs, "v")},
                                      {"z1", RatFunc(q.in_context(xs) * Z)}};
    std::map<std::string, RatFunc> iA{{"x", RatFunc::var(s1v, "x")},
                                      {"y", RatFunc::var(s1v, "y")},
                                      {"v", RatFunc::var(s1v, "v")},
                                      {"z", RatFunc(Z1, q.in_context(s1v))}};
    BirationalMap absorb = step_map(source, s1, fA, iA, "multiply-by-q", "absorb q into z");

    // step 2: chart change t1 = (v^2+1) t and complete the square in z
    MPoly q1_base = -q;
    Scalar a = -eps;
    MPoly l3_base = (v * nf.a1 + MPoly::constant(vctx, nf.a2)) * Scalar(1, 2);
    MPoly q2_base = q1_base * a - l3_base * l3_base;
    std::vector<std::string> s2v{"z2", "x2", "y2", "v"};
    MPoly Z2 = MPoly::variable(s2v, "z2"), X2 = MPoly::variable(s2v, "x2"),
          Y2 = MPoly::variable(s2v, "y2");
    MPoly s2eq = Z2 * Z2 + q1_base.in_context(s2v) * (X2 * X2 + Y2 * Y2) + q2_base.in_context(s2v);
    Hypersurface s2 = Hypersurface::of(s2v, s2eq, "z2");
    MPoly lin1 = (V1 * nf.a1 + MPoly::constant(s1v, nf.a2));
    std::map<std::string, RatFunc> fB{
        {"z2", RatFunc(Z1, disc1) + RatFunc(lin1 * Scalar(1, 2))},
        {"x2", RatFunc(X1, disc1)},
        {"y2", RatFunc(Y1, disc1)},
        {"v", RatFunc::var(s1v, "v")}};
    MPoly disc2 = disc.in_context(s2v);
    MPoly lin2 = (MPoly::variable(s2v, "v") * nf.a1 + MPoly::constant(s2v, nf.a2));
    std::map<std::string, RatFunc> iB{
        {"x", RatFunc(X2 * disc2)},
        {"y", RatFunc(Y2 * disc2)},
        {"v", RatFunc::var(s2v, "v")},
        {"z1", RatFunc((Z2 - lin2 * Scalar(1, 2)) * disc2)}};
    BirationalMap chart = step_map(s1, s2, fB, iB, "complete-square", "chart t1 = (v^2+1)t");

    BirationalMap tail = elem2_parametrize(q1_base, a, l3_base, {"z2", "x2", "y2", "v"});
    BirationalMap out = compose(compose(absorb, chart), tail);
    ensure_pass(out, "case (c) construction");
    return out;
}

BirationalMap construct_degree2(const MPoly& f_in) {
    std::vector<std::string> base{"v", "w"};
    MPoly f = f_in.in_context(merged_vars(f_in.vars(), base)).in_context(base);
    if (f.total_degree() > 2)
        fail(ErrorCode::PrecondViolated, "the base polynomial must have degree at most two");
    // homogenize f over (v, w, t) and present the threefold as a quadric in A^4
    std::vector<std::string> fiber{"x", "y", "v", "w", "t"};
    MPoly xf = MPoly::variable(fiber, "x"), yf = MPoly::variable(fiber, "y"),
          tf = MPoly::variable(fiber, "t");
    MPoly fh(fiber);
    for (const auto& [e, cpair] : f.terms()) {
        Expvec ext{0, 0, e[0], e[1], 2 - e[0] - e[1]};
        fh.insert_term(std::move(ext), cpair);
    }
    MPoly form = xf * xf + yf * yf - fh;

    for (const auto& v0 : height_ordered_rationals(20)) {
        for (const auto& w0 : height_ordered_rationals(20)) {
            Scalar c = f.eval({{"v", v0}, {"w", w0}});
            if (!c.is_real() || c.sign() < 0) continue;
            std::optional<std::pair<Scalar, Scalar>> xy;
            if (c.is_rational()) {
                if (auto split = rational_sum_of_two_squares(c.rational_value()))
                    xy = std::make_pair(Scalar(split->first), Scalar(split->second));
            }
            if (!xy)
                if (auto root = c.sqrt()) xy = std::make_pair(*root, Scalar(0));
            if (!xy) continue;
            std::vector<RatFunc> point{RatFunc::from_scalar({}, xy->first),
                                       RatFunc::from_scalar({}, xy->second),
                                       RatFunc::from_scalar({}, v0),
                                       RatFunc::from_scalar({}, w0),
                                       RatFunc::from_scalar({}, Scalar(1))};
            try {
                BirationalMap m = parametrize_quadric_with_point(form, fiber, point);
                ensure_pass(m, "degree-2 construction");
                return m;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::NotSmoothPoint || e.code() == ErrorCode::NotOnQuadric)
                    continue;
                throw;
            }
        }
    }
    fail(ErrorCode::NoSmoothPointFound, "no rational point on the quadric within the search bound");
}

}  // namespace cb
