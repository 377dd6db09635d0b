#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cb/ratfunc.hpp"

namespace cb {

// Affine hypersurface (or affine space when `eq` is absent). `reduction_var`
// names the variable used for division when reducing modulo the equation; the
// sources built here all carry one variable of degree two and use it.
struct Hypersurface {
    std::vector<std::string> vars;
    std::optional<MPoly> eq;
    std::optional<std::string> reduction_var;

    static Hypersurface affine_space(std::vector<std::string> vars);
    static Hypersurface of(std::vector<std::string> vars, MPoly eq, std::string reduction_var);

    bool operator==(const Hypersurface& o) const;
    bool operator!=(const Hypersurface& o) const { return !(*this == o); }
};

// One named substitution of a construction chain.
struct MapStep {
    std::string name;
    std::string citation;
    std::map<std::string, RatFunc> bindings;          // new coordinates in old ones
    std::map<std::string, RatFunc> inverse_bindings;  // old coordinates in new ones
};

enum class VerifyState { Unverified, Pass, Fail };

struct VerifyResult {
    VerifyState state = VerifyState::Unverified;
    std::optional<MPoly> witness;  // nonzero residual on failure
    std::string detail;
};

struct BirationalMap {
    Hypersurface source, target;
    std::vector<RatFunc> forward;  // one component per target variable, in source vars
    std::vector<RatFunc> inverse;  // one component per source variable, in target vars
    std::vector<MapStep> steps;
    VerifyResult verified;
};

// Exact check of the three defining identities:
//   1. source.eq(inverse) = 0 in the target function field,
//   2. forward(inverse) is the identity tuple on the target,
//   3. inverse(forward) is the identity tuple modulo source.eq.
// Denominators reducing to zero modulo the relevant equation fail hard.
VerifyResult verify_parametrization(const BirationalMap& m);

BirationalMap compose(const BirationalMap& first, const BirationalMap& second);

BirationalMap identity_map(const Hypersurface& h);

// Permutes the coordinates of an affine space (used by verification
// stability tests and chart bookkeeping).
BirationalMap coordinate_permutation(const Hypersurface& space,
                                     const std::vector<std::string>& permuted_vars);

// Remainder of p modulo the hypersurface equation, by pseudo-division with
// respect to the reduction variable. Zero iff p lies in the ideal (for the
// irreducible equations used here).
MPoly reduce_mod(const MPoly& p, const Hypersurface& h);

std::string map_to_text(const BirationalMap& m);

}  // namespace cb
