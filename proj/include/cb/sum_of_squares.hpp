#pragma once

#include <optional>
#include <utility>

#include "cb/mpoly.hpp"

namespace cb {

struct TwoSquares {
    MPoly a, b;                    // a^2 + b^2 equals the input exactly
    long long extension_radicand;  // 0 when both parts have rational coefficients
};

// Writes a nonnegative univariate polynomial as a sum of two squares over Q or
// over one real quadratic extension. Raises NotNonnegative (with a witness
// point in the message) when the input takes a negative value, NeedsExtension
// when no decomposition exists within one square root.
TwoSquares sum_of_two_squares(const MPoly& p);

// A positive rational as a sum of two rational squares, when one exists.
std::optional<std::pair<Rat, Rat>> rational_sum_of_two_squares(const Rat& value);

}  // namespace cb
