#pragma once

#include <string>
#include <vector>

#include "cb/mpoly.hpp"

namespace cb {

// Parses the expression grammar: integers, rationals a/b, variables
// [a-zA-Z][a-zA-Z0-9']*, operators + - * ^ and parentheses. Multiplication is
// always explicit. The variable context is the order of first appearance;
// pass `vars` to force a specific context instead (default: alphabetical).
MPoly parse_poly(const std::string& text);
MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

}  // namespace cb
