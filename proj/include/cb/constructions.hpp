#pragma once

#include "cb/birational.hpp"
#include "cb/normal_forms.hpp"

namespace cb {

// Stereographic parametrization of a quadric with a smooth point. `form` is
// homogeneous of degree 2 in `fiber_vars`; its remaining variables act as base
// parameters and pass through. `point` lists projective point coordinates as
// rational functions of the base variables. The source is the affine chart
// where the last fiber variable is 1; the target is an affine space on fresh
// parameters s1, s2, ... followed by the base variables. The returned map is
// verified.
BirationalMap parametrize_quadric_with_point(const MPoly& form,
                                             const std::vector<std::string>& fiber_vars,
                                             const std::vector<RatFunc>& point);

// Coordinate names for the bundle w^2 + q1*(x^2 + y^2) + q2 = 0 over the base.
struct Elem2Vars {
    std::string w, x, y, base;
};

struct Elem2Shape {
    Scalar a;
    MPoly l3;  // univariate in the base variable, degree <= 1
};

// Solves q2 = a*q1 - l3(v)^2 exactly. HypothesisViolated when no real
// solution exists (the shape obstruction), NeedsExtension when solutions exist
// only beyond one quadratic extension.
Elem2Shape resolve_elem2_shape(const MPoly& q1, const MPoly& q2, const std::string& base_var);

// Rationality of w^2 + q1 x^2 + q1 y^2 + (a q1 - l3^2) = 0 over the base line:
// norm-form split when q1 keeps a constant sign, root separation to u*r when
// it changes sign. The optional hint is an affine point (w, x, y, base).
BirationalMap elem2_parametrize(const MPoly& q1, const Scalar& a, const MPoly& l3,
                                const Elem2Vars& names,
                                const std::optional<std::array<Scalar, 4>>& point_hint = {});

// x^2 + y^2 = q(w) z^2 + c(w) z + g(w): slice search, two-squares point,
// projection. Source chart (x, y, z, w).
BirationalMap construct_case_a(const MPoly& q, const MPoly& c, const MPoly& g);

// All-real-node quartic (F1 record), source chart (x, y, v, w).
BirationalMap construct_case_b(const NormalForm& nf);

// Conjugate-pair quartic (F2 record), source chart (x, y, v, z).
BirationalMap construct_case_c(const NormalForm& nf);

// Degree-two base curve: x^2 + y^2 = f(v, w) is itself a quadric in A^4.
BirationalMap construct_degree2(const MPoly& f_affine);

}  // namespace cb
