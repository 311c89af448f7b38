#pragma once

#include <set>
#include <string>
#include <string_view>

#include "parser/ast.hpp"

namespace natgvd {

enum class Label : int { NonVulnerable = 0, Vulnerable = 1, Unknown = 2 };

// One C function definition, optionally preceded by an opaque preamble
// (includes, typedefs, macros) that is copied verbatim to every output.
struct SourceUnit {
  std::string id;
  std::string text;
  Label label = Label::Unknown;
};

// Throws ParseError with one of UnbalancedDelimiters, MultipleFunctions,
// DirectiveInBody or NotAFunction. Statements outside the supported subset
// become OpaqueStmt nodes instead of failing the parse.
Ast parse(std::string_view text);
inline Ast parse(const SourceUnit& unit) { return parse(unit.text); }

enum class FragmentKind { Expression, Statement };

// Parses a standalone expression or statement; the root of the returned Ast
// is the fragment node. Used to check that node spans reconstruct their
// subtrees.
Ast parseFragment(std::string_view text, FragmentKind kind,
                  const std::set<std::string, std::less<>>& typedefs = {});

}  // namespace natgvd
