#pragma once

#include "cb/plane_curves.hpp"

namespace cb {

// Invertible projective change of coordinates on [v : w : z]; stored with its
// exact inverse.
class ProjChange {
  public:
    using Mat = std::array<std::array<Scalar, 3>, 3>;

    static ProjChange identity();
    static ProjChange from_matrix(const Mat& m);  // throws CollinearNodes on det = 0

    const Mat& matrix() const { return m_; }
    const Mat& inverse_matrix() const { return inv_; }

    ProjChange compose_after(const ProjChange& first) const;  // this ∘ first
    ProjChange inverse() const;

    std::array<Scalar, 3> apply(const std::array<Scalar, 3>& p) const;
    // curve transform: (apply_to_curve(F))(x) == F(inverse * x)
    MPoly apply_to_curve(const MPoly& F) const;

    bool is_identity() const;

  private:
    Mat m_, inv_;
};

enum class NFVariant { F1, F2 };

// Coefficient record of the two trinodal-quartic templates:
//   F1: eps*v^2*w^2 - a1*v^2*z^2 - a2*w^2*z^2 + v*w*z*(b*v + c*w + d*z)
//   F2: eps*(v^2+w^2)^2 + (a1*v*z + a2*w*z)*(v^2+w^2) + b*v^2*z^2 + c*w^2*z^2 + d*v*w*z^2
struct NormalForm {
    NFVariant variant;
    int epsilon;  // +1 or -1
    Scalar a1, a2, b, c, d;
    ProjChange change;  // total change applied to the source curve
    Scalar scale;       // positive; change(source) == scale * template
};

MPoly instantiate_normal_form(NFVariant variant, int epsilon, const Scalar& a1, const Scalar& a2,
                              const Scalar& b, const Scalar& c, const Scalar& d);

// Moves the three nodes to the standard positions: all-real onto the
// coordinate points, conjugate pair onto [+-i : 1 : 0] with the real node at
// [0 : 0 : 1].
std::pair<ProjChange, PlaneCurve> standardize(const PlaneCurve& curve,
                                              const CurveProfile& profile);

// Reads the coefficient record off a standardized quartic; `change` in the
// result holds the variable permutation applied on top (usually the identity).
NormalForm extract_normal_form(const PlaneCurve& standardized);

// profile -> standardize -> extract, with the composed total change.
NormalForm to_normal_form(const PlaneCurve& curve, const CurveProfile& profile);

}  // namespace cb
