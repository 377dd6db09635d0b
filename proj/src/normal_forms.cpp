#include "cb/normal_forms.hpp"

#include <algorithm>

#include "cb/ratfunc.hpp"

namespace cb {

namespace {

Scalar det3(const ProjChange::Mat& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ProjChange::Mat adjugate(const ProjChange::Mat& m) {
    ProjChange::Mat a;
    auto minor = [&](int r, int c) {
        std::array<Scalar, 4> e;
        int k = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != r && j != c) e[static_cast<std::size_t>(k++)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return e[0] * e[3] - e[1] * e[2];
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Scalar mm = minor(j, i);
            if ((i + j) % 2 == 1) mm = -mm;
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mm;
        }
    return a;
}

ProjChange::Mat mat_mul(const ProjChange::Mat& a, const ProjChange::Mat& b) {
    ProjChange::Mat out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Scalar acc(0);
            for (int k = 0; k < 3; ++k)
                acc += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
    return out;
}

}  // namespace

ProjChange ProjChange::identity() {
    Mat m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Scalar(i == j ? 1 : 0);
    return from_matrix(m);
}

ProjChange ProjChange::from_matrix(const Mat& m) {
    Scalar d = det3(m);
    if (d.is_zero()) fail(ErrorCode::CollinearNodes, "projective change is not invertible");
    ProjChange out;
    out.m_ = m;
    out.inv_ = adjugate(m);
    Scalar inv_d = d.inverse();
    for (auto& row : out.inv_)
        for (auto& x : row) x *= inv_d;
    return out;
}

ProjChange ProjChange::compose_after(const ProjChange& first) const {
    ProjChange out;
    out.m_ = mat_mul(m_, first.m_);
    out.inv_ = mat_mul(first.inv_, inv_);
    return out;
}

ProjChange ProjChange::inverse() const {
    ProjChange out;
    out.m_ = inv_;
    out.inv_ = m_;
    return out;
}

std::array<Scalar, 3> ProjChange::apply(const std::array<Scalar, 3>& p) const {
    std::array<Scalar, 3> out{Scalar(0), Scalar(0), Scalar(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(i)] +=
                m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                p[static_cast<std::size_t>(j)];
    return out;
}

MPoly ProjChange::apply_to_curve(const MPoly& F) const {
    const auto& vars = PlaneCurve::standard_vars();
    std::map<std::string, RatFunc> sub;
    for (int i = 0; i < 3; ++i) {
        MPoly row(vars);
        for (int j = 0; j < 3; ++j)
            row += MPoly::variable(vars, vars[static_cast<std::size_t>(j)]) *
                   inv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        sub.emplace(vars[static_cast<std::size_t>(i)], RatFunc(row));
    }
    return substitute(F.in_context(vars), sub).num();
}

bool ProjChange::is_identity() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                Scalar(i == j ? 1 : 0))
                return false;
    return true;
}

MPoly instantiate_normal_form(NFVariant variant, int epsilon, const Scalar& a1, const Scalar& a2,
                              const Scalar& b, const Scalar& c, const Scalar& d) {
    const auto& vars = PlaneCurve::standard_vars();
    MPoly v = MPoly::variable(vars, "v"), w = MPoly::variable(vars, "w"),
          z = MPoly::variable(vars, "z");
    Scalar eps(epsilon == 1 ? 1 : -1);
    if (variant == NFVariant::F1)
        return v * v * w * w * eps - v * v * z * z * a1 - w * w * z * z * a2 +
               v * w * z * (v * b + w * c + z * d);
    MPoly disc = v * v + w * w;
    return disc * disc * eps + (v * z * a1 + w * z * a2) * disc + v * v * z * z * b +
           w * w * z * z * c + v * w * z * z * d;
}

std::pair<ProjChange, PlaneCurve> standardize(const PlaneCurve& curve,
                                              const CurveProfile& profile) {
    if (profile.node_count_over_closure != 3 || !profile.genus || *profile.genus != 0)
        fail(ErrorCode::PrecondViolated, "standardization needs a trinodal rational quartic");
    for (const auto& rec : profile.nodes)
        if (rec.kind != SingKind::Node)
            fail(ErrorCode::PrecondViolated, "a singular point is not a node");
    if (profile.collinear_nodes) fail(ErrorCode::CollinearNodes, "the three nodes are collinear");

    ProjChange::Mat columns;
    if (profile.real_node_count == 3) {
        auto nodes = profile.nodes;
        std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) {
            for (int i = 0; i < 3; ++i) {
                int cmp = a.coords[static_cast<std::size_t>(i)].compare(
                    b.coords[static_cast<std::size_t>(i)]);
                if (cmp != 0) return cmp < 0;
            }
            return false;
        });
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                columns[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    nodes[static_cast<std::size_t>(j)].coords[static_cast<std::size_t>(i)];
    } else if (profile.real_node_count == 1 && profile.nodes.size() == 2) {
        const SingularPointRecord* real_node = nullptr;
        const SingularPointRecord* pair = nullptr;
        for (const auto& rec : profile.nodes)
            (rec.conjugate_pair ? pair : real_node) = &rec;
        if (!real_node || !pair)
            fail(ErrorCode::PrecondViolated, "expected one real node and a conjugate pair");
        // pair = A + i*B; send B -> [1:0:0], A -> [0:1:0], real node -> [0:0:1]
        std::array<Scalar, 3> A, B;
        for (int i = 0; i < 3; ++i) {
            A[static_cast<std::size_t>(i)] = pair->coords[static_cast<std::size_t>(i)].real_part();
            B[static_cast<std::size_t>(i)] = pair->coords[static_cast<std::size_t>(i)].imag_part();
        }
        for (int i = 0; i < 3; ++i) {
            columns[static_cast<std::size_t>(i)][0] = B[static_cast<std::size_t>(i)];
            columns[static_cast<std::size_t>(i)][1] = A[static_cast<std::size_t>(i)];
            columns[static_cast<std::size_t>(i)][2] = real_node->coords[static_cast<std::size_t>(i)];
        }
    } else {
        fail(ErrorCode::PrecondViolated, "unsupported node pattern");
    }
    ProjChange change = ProjChange::from_matrix(columns).inverse();
    MPoly moved = change.apply_to_curve(curve.poly);
    return {change, PlaneCurve::from(moved)};
}

namespace {

Scalar coeff_of(const MPoly& F, int ev, int ew, int ez) {
    return F.coeff({ev, ew, ez});
}

std::optional<NormalForm> try_extract_f1(const MPoly& F) {
    static const std::vector<Expvec> allowed{{2, 2, 0}, {2, 0, 2}, {0, 2, 2},
                                             {2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    for (const auto& [e, c] : F.terms())
        if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) return std::nullopt;
    Scalar lead = coeff_of(F, 2, 2, 0);
    if (lead.is_zero() || !lead.is_real()) return std::nullopt;
    Scalar scale = lead.abs();
    MPoly G = F * scale.inverse();
    NormalForm nf;
    nf.variant = NFVariant::F1;
    nf.epsilon = lead.sign();
    nf.a1 = -coeff_of(G, 2, 0, 2);
    nf.a2 = -coeff_of(G, 0, 2, 2);
    nf.b = coeff_of(G, 2, 1, 1);
    nf.c = coeff_of(G, 1, 2, 1);
    nf.d = coeff_of(G, 1, 1, 2);
    nf.change = ProjChange::identity();
    nf.scale = scale;
    if (nf.a1.is_zero() || nf.a2.is_zero()) return std::nullopt;  // reducible shape
    return nf;
}

std::optional<NormalForm> try_extract_f2(const MPoly& F) {
    static const std::vector<Expvec> allowed{{4, 0, 0}, {0, 4, 0}, {2, 2, 0}, {3, 0, 1},
                                             {1, 2, 1}, {2, 1, 1}, {0, 3, 1}, {2, 0, 2},
                                             {0, 2, 2}, {1, 1, 2}};
    for (const auto& [e, c] : F.terms())
        if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) return std::nullopt;
    Scalar lead = coeff_of(F, 4, 0, 0);
    if (lead.is_zero() || !lead.is_real()) return std::nullopt;
    if (coeff_of(F, 0, 4, 0) != lead) return std::nullopt;
    if (coeff_of(F, 2, 2, 0) != lead * Scalar(2)) return std::nullopt;
    if (coeff_of(F, 3, 0, 1) != coeff_of(F, 1, 2, 1)) return std::nullopt;
    if (coeff_of(F, 0, 3, 1) != coeff_of(F, 2, 1, 1)) return std::nullopt;
    Scalar scale = lead.abs();
    MPoly G = F * scale.inverse();
    NormalForm nf;
    nf.variant = NFVariant::F2;
    nf.epsilon = lead.sign();
    nf.a1 = coeff_of(G, 3, 0, 1);
    nf.a2 = coeff_of(G, 2, 1, 1);
    nf.b = coeff_of(G, 2, 0, 2);
    nf.c = coeff_of(G, 0, 2, 2);
    nf.d = coeff_of(G, 1, 1, 2);
    nf.change = ProjChange::identity();
    nf.scale = scale;
    return nf;
}

// variable permutations as projective changes, in a fixed trial order
std::vector<ProjChange> variable_permutations() {
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {2, 1, 0},
                                          {1, 0, 2}, {1, 2, 0}, {2, 0, 1}};
    std::vector<ProjChange> out;
    for (const auto& perm : perms) {
        ProjChange::Mat m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Scalar(perm[static_cast<std::size_t>(i)] == j ? 1 : 0);
        out.push_back(ProjChange::from_matrix(m));
    }
    return out;
}

}  // namespace

NormalForm extract_normal_form(const PlaneCurve& standardized) {
    if (standardized.degree != 4)
        fail(ErrorCode::TemplateMismatch, "normal forms exist for quartics only");
    const MPoly F = standardized.poly;
    // F1 allows a permutation of variables to make the v^2 w^2 slot nonzero
    for (const auto& perm : variable_permutations()) {
        MPoly moved = perm.apply_to_curve(F);
        if (auto nf = try_extract_f1(moved)) {
            nf->change = perm;
            return *nf;
        }
    }
    if (auto nf = try_extract_f2(F)) return *nf;
    fail(ErrorCode::TemplateMismatch,
         "standardized quartic matches neither trinodal template: " + F.to_string());
}

NormalForm to_normal_form(const PlaneCurve& curve, const CurveProfile& profile) {
    auto [change, moved] = standardize(curve, profile);
    NormalForm nf = extract_normal_form(moved);
    nf.change = nf.change.compose_after(change);
    return nf;
}

}  // namespace cb
