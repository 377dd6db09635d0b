#include "cb/lattice.hpp"

#include <sstream>

namespace cb {

std::string DivisorClass::to_string() const {
    std::ostringstream os;
    os << h << "H";
    for (std::size_t i = 0; i < e.size(); ++i) {
        os << (e[i] < 0 ? " - " : " + ") << std::abs(e[i]) << "E" << i + 1;
    }
    return os.str();
}

SurfaceModel SurfaceModel::for_nodal_curve(int d) {
    if (d < 2 || d % 2 != 0)
        fail(ErrorCode::PrecondViolated, "the curve degree must be even and at least 2");
    return SurfaceModel{(d - 1) * (d - 2) / 2, d};
}

SurfaceModel SurfaceModel::with_nodes(int d, int r) {
    if (d < 2 || d % 2 != 0)
        fail(ErrorCode::PrecondViolated, "the curve degree must be even and at least 2");
    if (r < 0) fail(ErrorCode::PrecondViolated, "negative node count");
    return SurfaceModel{r, d};
}

DivisorClass SurfaceModel::canonical() const {
    return {-3, std::vector<long>(static_cast<std::size_t>(r), 1)};
}

DivisorClass SurfaceModel::discriminant() const {
    return {d, std::vector<long>(static_cast<std::size_t>(r), -2)};
}

DivisorClass SurfaceModel::half_bundle() const {
    return {d / 2, std::vector<long>(static_cast<std::size_t>(r), -1)};
}

std::string SurfaceModel::bundle_marker() const { return "L^-1 + L^-1 + O"; }

std::string SurfaceModel::equation_marker() const { return "x^2 - a*y^2 = sigma*z^2"; }

std::pair<DivisorClass, DivisorClass> canonical_and_delta(const SurfaceModel& model) {
    return {model.canonical(), model.discriminant()};
}

bool is_effective(const DivisorClass& cls) {
    for (long c : cls.e)
        if (c < 0)
            fail(ErrorCode::UndecidedEffectivity,
                 "effectivity decided only for nonnegative exceptional parts");
    // push forward to the plane: a curve of degree h through the centers with
    // the given multiplicities exists iff h >= 0 when every multiplicity is
    // allowed to be zero or positive
    return cls.h >= 0;
}

std::pair<DivisorClass, bool> adjoint_class(const SurfaceModel& model) {
    auto [k, delta] = canonical_and_delta(model);
    DivisorClass adjoint{4 * k.h + delta.h, {}};
    adjoint.e.reserve(k.e.size());
    for (std::size_t i = 0; i < k.e.size(); ++i) adjoint.e.push_back(4 * k.e[i] + delta.e[i]);
    return {adjoint, is_effective(adjoint)};
}

DivisorClass blowup_transform(const DivisorClass& cls, int a) {
    if (a < -2 || a > 0)
        fail(ErrorCode::InvalidMultiplicity, "blow-up multiplicity must be -2, -1 or 0");
    DivisorClass out = cls;
    out.e.push_back(a + 4);
    return out;
}

}  // namespace cb
