#pragma once

#include <optional>
#include <string>

#include "parser/ast.hpp"

namespace natgvd::testing {

// First violated structural invariant (child spans inside the parent,
// siblings ordered and disjoint, parent links consistent), if any.
std::optional<std::string> spanViolation(const Ast& ast);

// First statement or expression node whose text does not re-parse, as a
// standalone fragment, to a subtree of the same shape.
std::optional<std::string> reconstructionViolation(const Ast& ast);

}  // namespace natgvd::testing
