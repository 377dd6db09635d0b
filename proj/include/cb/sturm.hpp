#pragma once

#include <optional>

#include "cb/mpoly.hpp"

namespace cb {

// Number of distinct real roots of a univariate polynomial, by sign-variation
// counting on the canonical Sturm chain. The two-endpoint form counts roots in
// the closed interval [lo, hi]. Constant polynomials have no roots.
int sturm_real_roots(const MPoly& p);
int sturm_real_roots(const MPoly& p, const Scalar& lo, const Scalar& hi);

// A bound B such that every real root of p lies in (-B, B).
Scalar cauchy_root_bound(const MPoly& p);

// Univariate sign-change witness: a rational point where p takes a negative
// value, if any exists. Exact: uses Sturm-guided search plus parity of the
// leading term.
std::optional<Scalar> negative_value_witness(const MPoly& p);

}  // namespace cb
