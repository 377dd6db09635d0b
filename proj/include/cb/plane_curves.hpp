#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cb/mpoly.hpp"

namespace cb {

// Projective plane curve F(v, w, z) = 0, F homogeneous and nonzero.
struct PlaneCurve {
    MPoly poly;
    int degree;

    static PlaneCurve from(const MPoly& f);
    static const std::vector<std::string>& standard_vars();
};

enum class SingKind { Node, NotNode };
enum class Flag { Yes, No, Unknown };

const char* flag_name(Flag f);

// Quadratic part of the curve at a singular point, in the affine coordinates
// of the chart the point was found in: a*s^2 + b*s*t + c*t^2.
struct TangentCone {
    int chart;  // 0: z = 1, 1: w = 1, 2: v = 1
    Scalar a, b, c;
    Scalar discriminant() const { return b * b - Scalar(4) * a * c; }
};

struct SingularPointRecord {
    std::array<Scalar, 3> coords;  // [v : w : z], last nonzero coordinate = 1
    bool conjugate_pair;           // record stands for {p, conj(p)}
    SingKind kind;
    TangentCone tangent_cone;

    bool is_real() const;
    // real node with two real tangent directions (crunode)
    bool real_split() const;
};

struct CurveProfile {
    int degree;
    std::vector<SingularPointRecord> nodes;  // every singular point record
    int node_count_over_closure;
    int real_node_count;
    std::optional<int> genus;  // set when every singular point is a node
    bool all_nodes_rational_or_conjugate;
    bool collinear_nodes;
    Flag real_branch;
    Flag nonnegative_f;
    Flag irreducible;
};

// Complete list of singular points with coordinates in the scalar tower.
// Raises NotReduced for a positive-dimensional singular locus and
// UnsupportedNodeField when a singular point needs a bigger field.
std::vector<SingularPointRecord> singular_points(const PlaneCurve& curve);

SingKind classify_singularity(const PlaneCurve& curve, const std::array<Scalar, 3>& point);

CurveProfile curve_profile(const PlaneCurve& curve);

// Exact bivariate evaluation helpers shared with other modules.
Scalar eval_curve(const MPoly& f, const Scalar& v, const Scalar& w, const Scalar& z);

// Sign-change witness for the affine chart polynomial f(v, w): a rational
// point with f < 0, if the sampling scheme finds one.
std::optional<std::pair<Scalar, Scalar>> bivariate_negative_witness(const MPoly& affine,
                                                                    int samples = 12);

}  // namespace cb
