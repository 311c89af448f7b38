#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "analysis/ctypes.hpp"
#include "parser/ast.hpp"
#include "transforms/rule.hpp"

namespace natgvd {

struct Site {
  NodeId nodeId = kNoNode;
  TransformRule rule = TransformRule::AssignSplit;
  // Byte offset of the site's span start in the text the Ast was parsed from.
  uint32_t ordinal = 0;
};

struct Predicate {
  std::string_view name;
  bool (*holds)(const Ast&, NodeId);
};

struct ConstraintSet {
  TransformRule rule;
  std::vector<Predicate> predicates;
};

// Bumped whenever a predicate is added, removed or changes meaning, so that
// applicability numbers from different builds can be told apart.
inline constexpr int kConstraintCatalogVersion = 1;

const ConstraintSet& constraintSet(TransformRule rule);

bool hasSideEffects(const Ast& ast, NodeId id);

// Pattern matches only; sorted by strictly increasing ordinal.
std::vector<Site> candidateNodes(const Ast& ast, TransformRule rule);

bool constraintsValid(const Ast& ast, const Site& site);
// Name of the first predicate that fails, if any.
std::optional<std::string_view> failedPredicate(const Ast& ast, const Site& site);

// Declared type text of a local or parameter when it is a standard integer
// type. Storage classes are dropped; cv-qualifiers kept.
std::optional<std::string> declaredIntegerType(const Ast& ast,
                                               std::string_view identifier);

// --- helpers shared with the transforms -------------------------------------

// Integer type of a pure expression built from integer-typed identifiers,
// integer constants, parentheses, casts to integer types and arithmetic,
// bitwise, shift, comparison and logical operators.
std::optional<IntType> exprIntegerType(const Ast& ast, NodeId id);

bool isComparisonOp(std::string_view op);
// a < b  <=>  b > a
std::string_view mirroredOp(std::string_view op);
// !(a < b)  <=>  a >= b   (integers only)
std::string_view negatedOp(std::string_view op);
// Binary operator precedence (|| = 1 ... * = 10); 0 for non-binary nodes,
// 11 for postfix/primary nodes that never need parentheses.
int exprPrecedence(const Ast& ast, NodeId id);

// Unwraps any number of ParenExpr layers.
NodeId stripParens(const Ast& ast, NodeId id);

// True when the statement, placed directly before an `else`, would capture it
// (an if without else at its tail).
bool canAbsorbElse(const Ast& ast, NodeId stmt);

// ContinueStmt nodes inside `loop` that target `loop` itself.
bool hasOwnContinue(const Ast& ast, NodeId loop);

bool containsKind(const Ast& ast, NodeId id, NodeKind kind);
// CaseLabel inside `id` whose switch lies outside `id`.
bool hasForeignCaseLabel(const Ast& ast, NodeId id);
// A declaration with `static` storage inside `id`.
bool hasStaticDecl(const Ast& ast, NodeId id);

// Identifiers that appear as names (reads, writes or declarators) in `id`.
std::vector<std::string> identifiersIn(const Ast& ast, NodeId id);
// Names declared by DeclStmts anywhere inside `id`.
std::vector<std::string> declaredNamesIn(const Ast& ast, NodeId id, bool topLevelOnly);

// The Identifier a statement-level update writes: `i++`, `--i`, `i += e`,
// `i = e` with a pure right-hand side. kNoNode otherwise.
NodeId singleWriteTarget(const Ast& ast, NodeId expr);

// Deepest binary operator in an AssignSplit right-hand side; ties go to the
// leftmost.
NodeId deepestBinary(const Ast& ast, NodeId expr);

// Smallest k such that tmp_k does not occur as an identifier in the source.
std::string freshTempName(const Ast& ast);

}  // namespace natgvd
