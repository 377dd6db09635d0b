#pragma once

#include <optional>

#include "cb/constructions.hpp"
#include "cb/lattice.hpp"
#include "cb/plane_curves.hpp"

namespace cb {

enum class Family { Eq1, Eq2a, Eq2b };

const char* family_name(Family f);

struct AdjointCertificate {
    SurfaceModel model;
    DivisorClass cls;
    bool effective;
};

enum class VerdictStatus { Rational, NotRational, NotStablyRational, Open };

const char* verdict_status_name(VerdictStatus s);

struct Verdict {
    VerdictStatus status;
    std::vector<std::string> citations;
    std::string notes;
    std::optional<BirationalMap> map;            // Rational: verified parametrization
    std::optional<AdjointCertificate> adjoint;   // NotRational: effective adjoint class
    std::optional<std::string> certificate_ref;  // Eq1 pointer to the residue pipeline
};

struct ClassifyRequest {
    Family family;
    int d = 0;
    std::optional<PlaneCurve> curve;  // needed to attach maps for d <= 4
    bool assert_nonneg = false;
    bool assert_real_branch = false;
    bool conjectural_mode = false;
    std::optional<int> node_count;  // must match (d-1)(d-2)/2 when given
};

Verdict classify(const ClassifyRequest& request);

// X(x^2+y^2 = f) base change used to connect an input curve to the chart a
// construction expects: target must be the construction's source hypersurface.
BirationalMap threefold_base_change(const MPoly& F_homogeneous, const ProjChange& change,
                                    const Scalar& scale, const std::string& target_chart,
                                    const Hypersurface& target);

}  // namespace cb
