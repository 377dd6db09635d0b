#pragma once

#include <vector>

#include "cb/mpoly.hpp"

namespace cb {

enum class CoeffField { Rationals, GaussianRationals };

struct FactorPart {
    MPoly factor;  // monic, irreducible over the requested field
    int multiplicity;
};

struct Factorization {
    Scalar content;
    std::vector<FactorPart> parts;  // p == content * prod factor^multiplicity
};

// Factors a univariate polynomial of degree <= 8 with rational coefficients
// over Q or over the Gaussian rationals Q(i).
Factorization factor_univariate(const MPoly& p, CoeffField field);

// Rational roots of a univariate polynomial with rational coefficients.
std::vector<Scalar> rational_roots(const MPoly& p);

// Roots of p expressible in Q or in one quadratic extension (real or
// imaginary), read off the linear and quadratic factors over Q. `complete`
// reports whether those factors exhaust p.
struct SmallFieldRoots {
    std::vector<Scalar> roots;
    bool complete;
};
SmallFieldRoots roots_in_quadratic_fields(const MPoly& p);

// Both solutions of a*t^2 + b*t + c = 0 within the scalar tower, if the
// discriminant's square root exists there.
std::vector<Scalar> solve_quadratic(const Scalar& a, const Scalar& b, const Scalar& c);

}  // namespace cb
