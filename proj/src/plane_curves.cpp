#include "cb/plane_curves.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "cb/factor.hpp"
#include "cb/ratfunc.hpp"
#include "cb/sturm.hpp"

namespace cb {

const char* flag_name(Flag f) {
    switch (f) {
        case Flag::Yes: return "yes";
        case Flag::No: return "no";
        case Flag::Unknown: return "unknown";
    }
    return "unknown";
}

const std::vector<std::string>& PlaneCurve::standard_vars() {
    static const std::vector<std::string> vars{"v", "w", "z"};
    return vars;
}

PlaneCurve PlaneCurve::from(const MPoly& f) {
    MPoly F = f.in_context(merged_vars(f.vars(), standard_vars()));
    if (F.vars().size() != 3)
        fail(ErrorCode::VariableMismatch, "plane curve must use three variables");
    if (F.is_zero()) fail(ErrorCode::DivisionByZero, "zero polynomial defines no curve");
    if (!F.is_homogeneous())
        fail(ErrorCode::VariableMismatch, "plane curve polynomial must be homogeneous");
    return PlaneCurve{F, F.total_degree()};
}

bool SingularPointRecord::is_real() const {
    return coords[0].is_real() && coords[1].is_real() && coords[2].is_real();
}

bool SingularPointRecord::real_split() const {
    if (!is_real() || kind != SingKind::Node) return false;
    return tangent_cone.discriminant().sign() > 0;
}

Scalar eval_curve(const MPoly& f, const Scalar& v, const Scalar& w, const Scalar& z) {
    return f.eval({{"v", v}, {"w", w}, {"z", z}});
}

namespace {

struct Chart {
    int index;                  // 0: z = 1, 1: w = 1, 2: v = 1
    std::string x1, x2, fixed;  // affine coordinates and the dehomogenized variable
};

const std::array<Chart, 3> kCharts{Chart{0, "v", "w", "z"}, Chart{1, "v", "z", "w"},
                                   Chart{2, "w", "z", "v"}};

std::array<Scalar, 3> to_projective(const Chart& chart, const Scalar& a, const Scalar& b) {
    switch (chart.index) {
        case 0: return {a, b, Scalar(1)};
        case 1: return {a, Scalar(1), b};
        default: return {Scalar(1), a, b};
    }
}

std::array<Scalar, 3> conj_point(const std::array<Scalar, 3>& p) {
    return {p[0].conj(), p[1].conj(), p[2].conj()};
}

std::array<Scalar, 3> normalize_projective(const std::array<Scalar, 3>& p) {
    for (int j = 2; j >= 0; --j) {
        if (p[j].is_zero()) continue;
        Scalar inv = p[j].inverse();
        return {p[0] * inv, p[1] * inv, p[2] * inv};
    }
    fail(ErrorCode::Internal, "zero projective point");
}

bool same_point(const std::array<Scalar, 3>& p, const std::array<Scalar, 3>& q) {
    return p[0] == q[0] && p[1] == q[1] && p[2] == q[2];
}

bool is_singular_at(const MPoly& F, const std::array<Scalar, 3>& p) {
    if (!eval_curve(F, p[0], p[1], p[2]).is_zero()) return false;
    for (const auto& var : PlaneCurve::standard_vars())
        if (!eval_curve(F.derivative(var), p[0], p[1], p[2]).is_zero()) return false;
    return true;
}

TangentCone tangent_cone_at(const PlaneCurve& curve, const std::array<Scalar, 3>& point) {
    auto p = normalize_projective(point);
    int chart_index = !p[2].is_zero() ? 0 : (!p[1].is_zero() ? 1 : 2);
    const Chart& chart = kCharts[static_cast<std::size_t>(chart_index)];
    std::map<std::string, Scalar> at{{"v", p[0]}, {"w", p[1]}, {"z", p[2]}};
    auto second = [&](const std::string& u, const std::string& x) {
        return curve.poly.derivative(u).derivative(x).eval(at);
    };
    TangentCone cone;
    cone.chart = chart_index;
    cone.a = second(chart.x1, chart.x1) / Scalar(2);
    cone.b = second(chart.x1, chart.x2);
    cone.c = second(chart.x2, chart.x2) / Scalar(2);
    return cone;
}

std::array<Scalar, 3> canonical_pair_rep(const std::array<Scalar, 3>& p) {
    for (const auto& c : p) {
        if (c.is_real()) continue;
        return c.imag_part().sign() > 0 ? p : conj_point(p);
    }
    return p;
}

struct TowerRoots {
    std::vector<Scalar> roots;
    std::vector<MPoly> hard_factors;  // irreducible of degree >= 3
};

TowerRoots tower_roots(const MPoly& h, const std::string& var) {
    TowerRoots out;
    int d = h.degree_in(var);
    auto cs = h.coeffs_in(var);
    if (d <= 0) return out;
    if (d == 1) {
        out.roots.push_back(-cs[0].constant_value() / cs[1].constant_value());
        return out;
    }
    if (d == 2) {
        out.roots = solve_quadratic(cs[2].constant_value(), cs[1].constant_value(),
                                    cs[0].constant_value());
        return out;
    }
    bool rational = true;
    for (const auto& c : cs)
        if (!c.constant_value().is_rational()) rational = false;
    if (!rational) {
        out.hard_factors.push_back(h);
        return out;
    }
    auto fac = factor_univariate(h, CoeffField::Rationals);
    for (const auto& part : fac.parts) {
        int pd = part.factor.degree_in(var);
        auto pc = part.factor.coeffs_in(var);
        if (pd == 1)
            out.roots.push_back(-pc[0].constant_value());
        else if (pd == 2)
            for (const auto& r : solve_quadratic(pc[2].constant_value(), pc[1].constant_value(),
                                                 pc[0].constant_value()))
                out.roots.push_back(r);
        else
            out.hard_factors.push_back(part.factor);
    }
    return out;
}

// numeric check whether a hard eliminant factor carries a genuine singular
// point (used only to distinguish spurious resultant factors before refusing)
bool hard_factor_is_genuine(const MPoly& f, const MPoly& f1, const MPoly& f2, const MPoly& hard,
                            const Chart& chart) {
    auto dk = [](std::vector<std::complex<double>> c) {
        int deg = static_cast<int>(c.size()) - 1;
        for (int i = 0; i <= deg; ++i) c[i] /= c[deg];
        std::vector<std::complex<double>> z(deg);
        std::complex<double> seed(0.4, 0.9), power(1.0, 0.0);
        for (int i = 0; i < deg; ++i) z[i] = (power *= seed);
        auto eval = [&](std::complex<double> t) {
            std::complex<double> acc = 0;
            for (int i = deg; i >= 0; --i) acc = acc * t + c[i];
            return acc;
        };
        for (int iter = 0; iter < 400; ++iter)
            for (int i = 0; i < deg; ++i) {
                std::complex<double> denom = 1.0;
                for (int j = 0; j < deg; ++j)
                    if (j != i) denom *= z[i] - z[j];
                z[i] -= eval(z[i]) / denom;
            }
        return z;
    };
    auto coeffs_of = [&](const MPoly& p, const std::string& var) {
        std::vector<std::complex<double>> c;
        for (const auto& q : p.coeffs_in(var)) c.push_back(q.constant_value().to_complex());
        return c;
    };
    auto eval2 = [&](const MPoly& p, std::complex<double> a, std::complex<double> b) {
        std::complex<double> acc = 0;
        auto parts = p.coeffs_in(chart.x2);
        for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
            std::complex<double> ci = 0;
            auto inner = parts[static_cast<std::size_t>(i)].coeffs_in(chart.x1);
            for (int j = static_cast<int>(inner.size()) - 1; j >= 0; --j)
                ci = ci * a + inner[static_cast<std::size_t>(j)].constant_value().to_complex();
            acc = acc * b + ci;
        }
        return acc;
    };
    for (const auto& alpha : dk(coeffs_of(hard, chart.x1))) {
        std::vector<std::complex<double>> c;
        auto parts = f.coeffs_in(chart.x2);
        for (const auto& part : parts) {
            std::complex<double> ci = 0;
            auto inner = part.coeffs_in(chart.x1);
            for (int j = static_cast<int>(inner.size()) - 1; j >= 0; --j)
                ci = ci * alpha + inner[static_cast<std::size_t>(j)].constant_value().to_complex();
            c.push_back(ci);
        }
        while (c.size() > 1 && std::abs(c.back()) < 1e-9) c.pop_back();
        if (c.size() <= 1) return true;  // fiber degenerates: be conservative
        for (const auto& beta : dk(c)) {
            double scale = 1.0 + std::abs(alpha) + std::abs(beta);
            if (std::abs(eval2(f, alpha, beta)) < 1e-6 * scale &&
                std::abs(eval2(f1, alpha, beta)) < 1e-6 * scale &&
                std::abs(eval2(f2, alpha, beta)) < 1e-6 * scale)
                return true;
        }
    }
    return false;
}

}  // namespace

SingKind classify_singularity(const PlaneCurve& curve, const std::array<Scalar, 3>& point) {
    if (!is_singular_at(curve.poly, normalize_projective(point)))
        fail(ErrorCode::NotSingular, "the point is not a singular point of the curve");
    TangentCone cone = tangent_cone_at(curve, point);
    return cone.discriminant().is_zero() ? SingKind::NotNode : SingKind::Node;
}

std::vector<SingularPointRecord> singular_points(const PlaneCurve& curve) {
    const MPoly& F = curve.poly;
    if (curve.degree > 6)
        fail(ErrorCode::DegreeTooLarge, "singular point solving is limited to degree 6");
    for (const auto& [e, c] : F.terms())
        if (!c.is_rational())
            fail(ErrorCode::UnsupportedField, "singular point solving needs rational coefficients");

    MPoly g = poly_gcd(poly_gcd(F, F.derivative("v")),
                       poly_gcd(F.derivative("w"), F.derivative("z")));
    if (g.total_degree() > 0)
        fail(ErrorCode::NotReduced, "curve has a repeated component: gcd " + g.to_string());

    std::vector<std::array<Scalar, 3>> points;
    auto consider = [&](const std::array<Scalar, 3>& p) {
        if (!is_singular_at(F, p)) return;
        for (const auto& q : points)
            if (same_point(p, q)) return;
        points.push_back(p);
    };

    for (const Chart& chart : kCharts) {
        MPoly f = F.set_vars({{chart.fixed, Scalar(1)}});
        if (f.is_constant()) continue;
        MPoly f1 = f.derivative(chart.x1);
        MPoly f2 = f.derivative(chart.x2);
        std::vector<MPoly> elim;
        for (const auto& pair : {std::pair{f, f1}, std::pair{f, f2}, std::pair{f1, f2}}) {
            MPoly r = resultant(pair.first, pair.second, chart.x2);
            if (!r.is_zero()) elim.push_back(r);
        }
        if (elim.empty()) fail(ErrorCode::NotReduced, "degenerate elimination in chart " + chart.fixed);
        MPoly r = elim[0];
        for (std::size_t i = 1; i < elim.size(); ++i) r = poly_gcd(r, elim[i]);
        if (r.is_constant()) continue;
        auto candidates = tower_roots(make_squarefree(r, chart.x1), chart.x1);
        for (const auto& hard : candidates.hard_factors)
            if (hard_factor_is_genuine(f, f1, f2, hard, chart))
                fail(ErrorCode::UnsupportedNodeField,
                     "singular point coordinate beyond one quadratic extension: " +
                         hard.to_string());
        for (const auto& alpha : candidates.roots) {
            MPoly fa = f.set_vars({{chart.x1, alpha}});
            MPoly fb = f1.set_vars({{chart.x1, alpha}});
            MPoly fc = f2.set_vars({{chart.x1, alpha}});
            MPoly h = poly_gcd(poly_gcd(fa, fb), fc);
            if (h.is_constant()) continue;  // spurious eliminant root
            auto fiber = tower_roots(make_squarefree(h, chart.x2), chart.x2);
            if (!fiber.hard_factors.empty())
                fail(ErrorCode::UnsupportedNodeField,
                     "singular fiber beyond one quadratic extension over " + chart.x1 + " = " +
                         alpha.to_string());
            for (const auto& beta : fiber.roots) {
                auto p = to_projective(chart, alpha, beta);
                if (chart.index >= 1 && !p[2].is_zero()) continue;
                if (chart.index == 2 && !p[1].is_zero()) continue;
                consider(p);
            }
        }
    }
    consider({Scalar(1), Scalar(0), Scalar(0)});

    std::vector<SingularPointRecord> records;
    std::vector<bool> used(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const auto& p = points[i];
        bool real = p[0].is_real() && p[1].is_real() && p[2].is_real();
        SingularPointRecord rec;
        rec.conjugate_pair = !real;
        rec.coords = real ? p : canonical_pair_rep(p);
        if (!real) {
            auto pc = conj_point(p);
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (!used[j] && same_point(points[j], pc)) used[j] = true;
        }
        rec.tangent_cone = tangent_cone_at(curve, rec.coords);
        rec.kind = rec.tangent_cone.discriminant().is_zero() ? SingKind::NotNode : SingKind::Node;
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        if (a.conjugate_pair != b.conjugate_pair) return !a.conjugate_pair;
        auto key = [](const SingularPointRecord& r) {
            return r.coords[0].to_string() + "|" + r.coords[1].to_string() + "|" +
                   r.coords[2].to_string();
        };
        return key(a) < key(b);
    });
    return records;
}

std::optional<std::pair<Scalar, Scalar>> bivariate_negative_witness(const MPoly& affine,
                                                                    int samples) {
    for (int k = -samples; k <= samples; ++k) {
        Scalar t(k, 2);
        for (int dir = 0; dir < 2; ++dir) {
            MPoly line = dir == 0 ? affine.set_vars({{"w", t}}) : affine.set_vars({{"v", t}});
            if (line.is_zero()) continue;
            if (line.is_constant()) {
                if (line.constant_value().sign() < 0)
                    return dir == 0 ? std::make_pair(Scalar(0), t) : std::make_pair(t, Scalar(0));
                continue;
            }
            if (auto x = negative_value_witness(line)) {
                if (dir == 0) return std::make_pair(*x, t);
                return std::make_pair(t, *x);
            }
        }
    }
    for (int k = -samples / 2; k <= samples / 2; ++k) {
        MPoly slope = MPoly::variable(affine.vars(), "v") * Scalar(k);
        MPoly diag = substitute(affine, {{"w", RatFunc(slope)}}).num();
        if (diag.is_zero() || diag.is_constant()) continue;
        if (auto x = negative_value_witness(diag)) return std::make_pair(*x, *x * Scalar(k));
    }
    return std::nullopt;
}

CurveProfile curve_profile(const PlaneCurve& curve) {
    CurveProfile profile;
    profile.degree = curve.degree;
    profile.nodes = singular_points(curve);
    profile.node_count_over_closure = 0;
    profile.real_node_count = 0;
    bool all_nodes = true;
    for (const auto& rec : profile.nodes) {
        profile.node_count_over_closure += rec.conjugate_pair ? 2 : 1;
        if (!rec.conjugate_pair) ++profile.real_node_count;
        if (rec.kind != SingKind::Node) all_nodes = false;
    }
    if (all_nodes)
        profile.genus =
            (curve.degree - 1) * (curve.degree - 2) / 2 - profile.node_count_over_closure;
    profile.all_nodes_rational_or_conjugate = true;  // enforced by singular_points

    profile.collinear_nodes = false;
    std::vector<std::array<Scalar, 3>> closure_points;
    for (const auto& rec : profile.nodes) {
        closure_points.push_back(rec.coords);
        if (rec.conjugate_pair)
            closure_points.push_back(
                {rec.coords[0].conj(), rec.coords[1].conj(), rec.coords[2].conj()});
    }
    if (closure_points.size() == 3) {
        const auto& p = closure_points[0];
        const auto& q = closure_points[1];
        const auto& r = closure_points[2];
        Scalar det = p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0]) +
                     p[2] * (q[0] * r[1] - q[1] * r[0]);
        profile.collinear_nodes = det.is_zero();
    }

    if (profile.nodes.empty()) {
        profile.irreducible = Flag::Yes;  // distinct components would intersect
    } else if (curve.degree == 4 && all_nodes && profile.node_count_over_closure == 3 &&
               !profile.collinear_nodes) {
        profile.irreducible = Flag::Yes;  // any splitting forces extra or worse singularities
    } else {
        profile.irreducible = Flag::Unknown;
    }

    MPoly affine = curve.poly.set_vars({{"z", Scalar(1)}});
    auto negative = bivariate_negative_witness(affine);
    profile.nonnegative_f = negative ? Flag::No : Flag::Yes;

    bool crunode = false;
    for (const auto& rec : profile.nodes)
        if (rec.real_split()) crunode = true;
    if (crunode) {
        profile.real_branch = Flag::Yes;
    } else if (negative) {
        auto positive = bivariate_negative_witness(-affine);
        profile.real_branch = positive ? Flag::Yes : Flag::No;
    } else {
        profile.real_branch = Flag::No;  // best effort: isolated real locus only
    }
    return profile;
}

}  // namespace cb
