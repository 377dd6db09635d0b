#pragma once

#include <array>
#include <vector>

#include "cb/ratfunc.hpp"

namespace cb {

// Mod-2 symbol (f, g, h), each entry taken up to square factors.
struct SymbolTriple {
    std::array<RatFunc, 3> entries;

    static SymbolTriple of(const RatFunc& f, const RatFunc& g, const RatFunc& h);
};

// The distinguished component of the special fiber {s = 0}: ambient relations,
// the uniformizer, the component equation and the relations presenting the
// residue field.
struct DivisorSpec {
    std::vector<std::string> vars;
    std::vector<MPoly> ambient_relations;
    std::string uniformizer;
    MPoly component;
    std::vector<MPoly> residue_relations;
};

DivisorSpec divisor_spec_for(int m, int e);

struct ScalingCheck {
    bool pass;
    MPoly witness;  // nonzero difference on failure
};

// The scaling substitution turns the first relation into s^{4m} times the
// rescaled one and the second into s^{4m-2} times it; checked exactly.
ScalingCheck check_scaling_identity(int m, int e);

// Largest power of the uniformizer dividing h, with the cofactor required to
// survive restriction to the component (IndeterminateValuation otherwise).
int valuation_along(const MPoly& h, const DivisorSpec& spec);

struct ResidueSymbol {
    bool trivial;
    std::pair<Scalar, Scalar> value;  // (-1, -1) when nontrivial
};

ResidueSymbol tame_residue(const SymbolTriple& symbol, const DivisorSpec& spec);

struct TrustedFact {
    std::string tag;
    std::string statement;
    std::string citation;
};

enum class ResidueConclusion { NotStablyRationalOverPuiseux, Inconclusive };

struct ResidueCertificate {
    int m, e;
    std::vector<MPoly> equ1_system, equ2_system;
    std::vector<std::pair<std::string, std::string>> substitution;
    SymbolTriple symbol;
    int valuation;
    ResidueSymbol residue;
    std::vector<TrustedFact> trusted_facts;
    ResidueConclusion conclusion;
};

ResidueCertificate build_certificate(int m, int e);

// conclusion consistency: the strong conclusion requires the odd valuation,
// the nontrivial residue and every trusted-fact tag
bool certificate_well_formed(const ResidueCertificate& cert);

}  // namespace cb
