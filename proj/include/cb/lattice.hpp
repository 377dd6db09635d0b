#pragma once

#include <string>
#include <vector>

#include "cb/errors.hpp"

namespace cb {

// Divisor class a*H + sum c_i E_i on a blow-up of the plane in r points.
struct DivisorClass {
    long h;
    std::vector<long> e;

    bool operator==(const DivisorClass& o) const { return h == o.h && e == o.e; }
    std::string to_string() const;
};

// Blow-up of the plane at the r nodes of a rational nodal curve of even
// degree d, together with the conic-bundle model data living on it.
struct SurfaceModel {
    int r;
    int d;

    static SurfaceModel for_nodal_curve(int d);  // r = (d-1)(d-2)/2
    static SurfaceModel with_nodes(int d, int r);

    DivisorClass canonical() const;      // -3H + sum E_i
    DivisorClass discriminant() const;   // dH - 2 sum E_i
    DivisorClass half_bundle() const;    // (d/2)H - sum E_i
    std::string bundle_marker() const;   // the rank-3 bundle carrying the model
    std::string equation_marker() const;
};

std::pair<DivisorClass, DivisorClass> canonical_and_delta(const SurfaceModel& model);

// 4K + Delta together with its effectivity. Decided exactly for classes with
// all exceptional coefficients >= 0; UndecidedEffectivity otherwise.
std::pair<DivisorClass, bool> adjoint_class(const SurfaceModel& model);

bool is_effective(const DivisorClass& cls);

// Pullback under one more blow-up with node multiplicity a in {-2, -1, 0}:
// appends an exceptional coefficient a + 4.
DivisorClass blowup_transform(const DivisorClass& cls, int a);

}  // namespace cb
