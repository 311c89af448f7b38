#include "analysis/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace natgvd {

namespace {

const std::vector<NodeId>& kids(const Ast& ast, NodeId id) {
  return ast.node(id).children;
}

bool isIncDec(const AstNode& n) {
  return n.kind == NodeKind::UnaryExpr && (n.op == "++" || n.op == "--");
}

bool isLoop(NodeKind k) {
  return k == NodeKind::WhileStmt || k == NodeKind::ForStmt ||
         k == NodeKind::DoWhileStmt;
}

// Identifier tokens inside an opaque span.
void spanIdentifiers(const Ast& ast, Span span, std::vector<std::string>& out) {
  const auto& toks = ast.tokens();
  auto it = std::lower_bound(toks.begin(), toks.end(), span.begin,
                             [](const Token& t, uint32_t at) { return t.span.begin < at; });
  for (; it != toks.end() && it->span.end <= span.end; ++it) {
    if (it->kind == TokenKind::Identifier) out.emplace_back(ast.text(it->span));
  }
}

bool spanHasKeyword(const Ast& ast, Span span, std::string_view word) {
  const auto& toks = ast.tokens();
  auto it = std::lower_bound(toks.begin(), toks.end(), span.begin,
                             [](const Token& t, uint32_t at) { return t.span.begin < at; });
  for (; it != toks.end() && it->span.end <= span.end; ++it) {
    if (it->kind == TokenKind::Keyword && ast.text(it->span) == word) return true;
  }
  return false;
}

size_t countBinary(const Ast& ast, NodeId id) {
  size_t n = 0;
  for (NodeId c : ast.subtree(id)) {
    if (ast.kind(c) == NodeKind::BinaryExpr) ++n;
  }
  return n;
}

// --- AssignSplit -----------------------------------------------------------

NodeId assignOf(const Ast& ast, NodeId stmt) {
  if (ast.kind(stmt) != NodeKind::ExprStmt || kids(ast, stmt).size() != 1) {
    return kNoNode;
  }
  const NodeId e = kids(ast, stmt)[0];
  const AstNode& n = ast.node(e);
  return n.kind == NodeKind::AssignExpr && n.op == "=" ? e : kNoNode;
}

NodeId assignRhs(const Ast& ast, NodeId stmt) {
  const NodeId a = assignOf(ast, stmt);
  return a == kNoNode ? kNoNode : kids(ast, a)[1];
}

bool asSimpleAssignment(const Ast& ast, NodeId id) {
  return assignOf(ast, id) != kNoNode;
}

bool asInsideBlock(const Ast& ast, NodeId id) {
  const NodeId p = ast.parent(id);
  return p != kNoNode && ast.kind(p) == NodeKind::CompoundStmt;
}

bool asIntegerLhs(const Ast& ast, NodeId id) {
  const NodeId a = assignOf(ast, id);
  if (a == kNoNode) return false;
  const NodeId lhs = kids(ast, a)[0];
  return ast.kind(lhs) == NodeKind::Identifier &&
         declaredIntegerType(ast, ast.text(lhs)).has_value();
}

bool asTwoOperators(const Ast& ast, NodeId id) {
  const NodeId rhs = assignRhs(ast, id);
  return rhs != kNoNode && countBinary(ast, rhs) >= 2;
}

bool asSimpleOperands(const Ast& ast, NodeId id) {
  const NodeId rhs = assignRhs(ast, id);
  if (rhs == kNoNode) return false;
  for (NodeId c : ast.subtree(rhs)) {
    const AstNode& n = ast.node(c);
    switch (n.kind) {
      case NodeKind::BinaryExpr:
        if (n.op == "&&" || n.op == "||" || n.op == ",") return false;
        break;
      case NodeKind::ParenExpr:
      case NodeKind::Identifier:
        break;
      case NodeKind::Literal:
        if (!integerLiteralType(ast.text(c))) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

bool asPure(const Ast& ast, NodeId id) {
  const NodeId rhs = assignRhs(ast, id);
  return rhs != kNoNode && !hasSideEffects(ast, rhs);
}

bool asTypedOperands(const Ast& ast, NodeId id) {
  const NodeId rhs = assignRhs(ast, id);
  return rhs != kNoNode && exprIntegerType(ast, rhs).has_value();
}

bool asFreshTemporary(const Ast& ast, NodeId) {
  return !freshTempName(ast).empty();
}

// --- CompoundAssignSplit ---------------------------------------------------

bool caOperator(const Ast& ast, NodeId id) {
  const AstNode& n = ast.node(id);
  if (n.kind != NodeKind::CompoundAssignExpr) return false;
  static const std::set<std::string, std::less<>> ops = {
      "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};
  return ops.count(n.op) > 0;
}

bool caLvalueShape(const Ast& ast, NodeId id) {
  if (ast.kind(id) != NodeKind::CompoundAssignExpr) return false;
  const NodeKind k = ast.kind(kids(ast, id)[0]);
  return k == NodeKind::Identifier || k == NodeKind::MemberExpr ||
         k == NodeKind::IndexExpr;
}

bool caLvaluePure(const Ast& ast, NodeId id) {
  if (ast.kind(id) != NodeKind::CompoundAssignExpr) return false;
  return !hasSideEffects(ast, kids(ast, id)[0]);
}

// --- loops -----------------------------------------------------------------

bool isWhile(const Ast& ast, NodeId id) { return ast.kind(id) == NodeKind::WhileStmt; }
bool isFor(const Ast& ast, NodeId id) { return ast.kind(id) == NodeKind::ForStmt; }

bool forNoContinue(const Ast& ast, NodeId id) {
  return isFor(ast, id) && !hasOwnContinue(ast, id);
}

bool forUpdateNotShadowed(const Ast& ast, NodeId id) {
  if (!isFor(ast, id)) return false;
  const ForClauses fc = ast.forClauses(id);
  if (fc.update == kNoNode || ast.kind(fc.body) != NodeKind::CompoundStmt) {
    return true;
  }
  const auto declared = declaredNamesIn(ast, fc.body, true);
  for (const std::string& name : identifiersIn(ast, fc.update)) {
    if (std::find(declared.begin(), declared.end(), name) != declared.end()) {
      return false;
    }
  }
  return true;
}

// --- conditions ------------------------------------------------------------

bool isIf(const Ast& ast, NodeId id) { return ast.kind(id) == NodeKind::IfStmt; }

bool hasElse(const Ast& ast, NodeId id) {
  return isIf(ast, id) && ast.ifElse(id) != kNoNode;
}

bool branchMovable(const Ast& ast, NodeId branch) {
  return branch == kNoNode || (!containsKind(ast, branch, NodeKind::LabelStmt) &&
                               !hasForeignCaseLabel(ast, branch));
}

bool negLabelFree(const Ast& ast, NodeId id) {
  return isIf(ast, id) && branchMovable(ast, ast.ifThen(id)) &&
         branchMovable(ast, ast.ifElse(id));
}

bool condIs(const Ast& ast, NodeId id, std::string_view op) {
  if (!isIf(ast, id)) return false;
  const AstNode& c = ast.node(ast.ifCond(id));
  return c.kind == NodeKind::BinaryExpr && c.op == op;
}

bool andCondition(const Ast& ast, NodeId id) { return condIs(ast, id, "&&"); }
bool orCondition(const Ast& ast, NodeId id) { return condIs(ast, id, "||"); }

bool andLabelFree(const Ast& ast, NodeId id) {
  if (!isIf(ast, id)) return false;
  if (ast.ifElse(id) == kNoNode) return true;
  return branchMovable(ast, ast.ifThen(id)) && branchMovable(ast, ast.ifElse(id));
}

bool andElseNoStatic(const Ast& ast, NodeId id) {
  return isIf(ast, id) &&
         (ast.ifElse(id) == kNoNode || !hasStaticDecl(ast, ast.ifElse(id)));
}

bool orThenLabelFree(const Ast& ast, NodeId id) {
  return isIf(ast, id) && branchMovable(ast, ast.ifThen(id));
}

bool orThenNoStatic(const Ast& ast, NodeId id) {
  return isIf(ast, id) && !hasStaticDecl(ast, ast.ifThen(id));
}

// --- CondReorder -----------------------------------------------------------

bool insideIfCondition(const Ast& ast, NodeId id) {
  for (NodeId cur = id, p = ast.parent(id); p != kNoNode;
       cur = p, p = ast.parent(p)) {
    const NodeKind k = ast.kind(p);
    if (k == NodeKind::IfStmt) return ast.ifCond(p) == cur;
    if (k != NodeKind::BinaryExpr && k != NodeKind::UnaryExpr &&
        k != NodeKind::ParenExpr && k != NodeKind::TernaryExpr &&
        k != NodeKind::CastExpr && k != NodeKind::CallExpr &&
        k != NodeKind::IndexExpr && k != NodeKind::MemberExpr &&
        k != NodeKind::AssignExpr && k != NodeKind::CompoundAssignExpr) {
      return false;
    }
  }
  return false;
}

bool reorderComparison(const Ast& ast, NodeId id) {
  const AstNode& n = ast.node(id);
  return n.kind == NodeKind::BinaryExpr && isComparisonOp(n.op) &&
         insideIfCondition(ast, id);
}

bool reorderPure(const Ast& ast, NodeId id) {
  if (ast.kind(id) != NodeKind::BinaryExpr) return false;
  return !hasSideEffects(ast, kids(ast, id)[0]) &&
         !hasSideEffects(ast, kids(ast, id)[1]);
}

std::vector<ConstraintSet> buildCatalog() {
  std::vector<ConstraintSet> out;
  out.push_back({TransformRule::AssignSplit,
                 {{"simple-assignment-statement", asSimpleAssignment},
                  {"statement-in-block", asInsideBlock},
                  {"integer-typed-lhs", asIntegerLhs},
                  {"at-least-two-binary-operators", asTwoOperators},
                  {"identifier-or-integer-operands", asSimpleOperands},
                  {"side-effect-free-rhs", asPure},
                  {"integer-typed-operands", asTypedOperands},
                  {"fresh-temporary-available", asFreshTemporary}}});
  out.push_back({TransformRule::CompoundAssignSplit,
                 {{"compound-assignment-operator", caOperator},
                  {"identifier-member-or-index-lvalue", caLvalueShape},
                  {"side-effect-free-lvalue", caLvaluePure}}});
  out.push_back({TransformRule::WhileToFor, {{"while-loop", isWhile}}});
  out.push_back({TransformRule::ForToWhile,
                 {{"for-loop", isFor},
                  {"no-continue-for-this-loop", forNoContinue},
                  {"update-not-shadowed-in-body", forUpdateNotShadowed}}});
  out.push_back({TransformRule::CondNegate,
                 {{"if-statement", isIf},
                  {"has-else-branch", hasElse},
                  {"branches-free-of-labels", negLabelFree}}});
  out.push_back({TransformRule::CondSplitAnd,
                 {{"top-level-and-condition", andCondition},
                  {"labels-not-duplicated", andLabelFree},
                  {"no-static-in-duplicated-else", andElseNoStatic}}});
  out.push_back({TransformRule::CondSplitOr,
                 {{"top-level-or-condition", orCondition},
                  {"then-branch-free-of-labels", orThenLabelFree},
                  {"no-static-in-duplicated-then", orThenNoStatic}}});
  out.push_back({TransformRule::CondReorder,
                 {{"comparison-in-if-condition", reorderComparison},
                  {"side-effect-free-operands", reorderPure}}});
  return out;
}

}  // namespace

const ConstraintSet& constraintSet(TransformRule rule) {
  static const std::vector<ConstraintSet> catalog = buildCatalog();
  return catalog.at(static_cast<size_t>(rule));
}

bool hasSideEffects(const Ast& ast, NodeId id) {
  for (NodeId c : ast.subtree(id)) {
    const AstNode& n = ast.node(c);
    switch (n.kind) {
      case NodeKind::AssignExpr:
      case NodeKind::CompoundAssignExpr:
      case NodeKind::CallExpr:
      case NodeKind::OpaqueStmt:
        return true;
      case NodeKind::UnaryExpr:
        if (isIncDec(n)) return true;
        break;
      default:
        break;
    }
  }
  return false;
}

std::vector<Site> candidateNodes(const Ast& ast, TransformRule rule) {
  std::vector<Site> out;
  const NodeId body = ast.functionBody();
  for (NodeId id : ast.subtree(body)) {
    const AstNode& n = ast.node(id);
    bool match = false;
    switch (rule) {
      case TransformRule::AssignSplit:
        match = assignOf(ast, id) != kNoNode;
        break;
      case TransformRule::CompoundAssignSplit:
        match = n.kind == NodeKind::CompoundAssignExpr;
        break;
      case TransformRule::WhileToFor:
        match = n.kind == NodeKind::WhileStmt;
        break;
      case TransformRule::ForToWhile:
        match = n.kind == NodeKind::ForStmt;
        break;
      case TransformRule::CondNegate:
        match = n.kind == NodeKind::IfStmt;
        break;
      case TransformRule::CondSplitAnd:
        match = andCondition(ast, id);
        break;
      case TransformRule::CondSplitOr:
        match = orCondition(ast, id);
        break;
      case TransformRule::CondReorder:
        match = reorderComparison(ast, id);
        break;
    }
    if (match) out.push_back(Site{id, rule, n.span.begin});
  }
  // Preorder visits an enclosing node before nodes that share its start
  // offset (e.g. `a < b == c`); keep the outermost so ordinals stay unique.
  std::stable_sort(out.begin(), out.end(),
                   [](const Site& a, const Site& b) { return a.ordinal < b.ordinal; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Site& a, const Site& b) { return a.ordinal == b.ordinal; }),
            out.end());
  return out;
}

std::optional<std::string_view> failedPredicate(const Ast& ast, const Site& site) {
  if (site.nodeId < 0 || static_cast<size_t>(site.nodeId) >= ast.size()) {
    return std::string_view("valid-node");
  }
  for (const Predicate& p : constraintSet(site.rule).predicates) {
    if (!p.holds(ast, site.nodeId)) return p.name;
  }
  return std::nullopt;
}

bool constraintsValid(const Ast& ast, const Site& site) {
  return !failedPredicate(ast, site).has_value();
}

std::optional<std::string> declaredIntegerType(const Ast& ast,
                                               std::string_view identifier) {
  std::optional<std::string> found;
  bool conflict = false;
  auto consider = [&](NodeId ident) {
    if (ast.text(ident) != identifier) return;
    const std::string& t = ast.node(ident).typeText;
    std::string norm = parseIntegerType(t) ? normalizeTypeText(t) : std::string();
    if (!found) {
      found = norm;
    } else if (*found != norm) {
      conflict = true;
    }
  };
  const NodeId params = ast.paramList();
  if (params != kNoNode) {
    for (NodeId p : kids(ast, params)) consider(p);
  }
  for (NodeId id : ast.subtree(ast.functionBody())) {
    if (ast.kind(id) != NodeKind::DeclStmt) continue;
    for (NodeId d : kids(ast, id)) {
      if (ast.kind(d) == NodeKind::AssignExpr) d = kids(ast, d)[0];
      if (ast.kind(d) == NodeKind::Identifier) consider(d);
    }
  }
  if (conflict || !found || found->empty()) return std::nullopt;
  return found;
}

std::optional<IntType> exprIntegerType(const Ast& ast, NodeId id) {
  const AstNode& n = ast.node(id);
  switch (n.kind) {
    case NodeKind::Identifier: {
      auto t = declaredIntegerType(ast, ast.text(id));
      return t ? parseIntegerType(*t) : std::nullopt;
    }
    case NodeKind::Literal:
      return integerLiteralType(ast.text(id));
    case NodeKind::ParenExpr:
      return exprIntegerType(ast, n.children[0]);
    case NodeKind::CastExpr: {
      if (!exprIntegerType(ast, n.children[0])) return std::nullopt;
      return parseIntegerType(n.typeText);
    }
    case NodeKind::UnaryExpr: {
      if (n.children.size() != 1) return std::nullopt;
      auto t = exprIntegerType(ast, n.children[0]);
      if (!t) return std::nullopt;
      if (n.op == "-" || n.op == "+" || n.op == "~") return promote(*t);
      if (n.op == "!") return IntType::Int;
      return std::nullopt;
    }
    case NodeKind::BinaryExpr: {
      auto l = exprIntegerType(ast, n.children[0]);
      auto r = exprIntegerType(ast, n.children[1]);
      if (!l || !r || n.op == ",") return std::nullopt;
      if (isComparisonOp(n.op) || n.op == "&&" || n.op == "||") return IntType::Int;
      if (n.op == "<<" || n.op == ">>") return promote(*l);
      return commonType(*l, *r);
    }
    default:
      return std::nullopt;
  }
}

bool isComparisonOp(std::string_view op) {
  return op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" ||
         op == "!=";
}

std::string_view mirroredOp(std::string_view op) {
  if (op == "<") return ">";
  if (op == ">") return "<";
  if (op == "<=") return ">=";
  if (op == ">=") return "<=";
  return op;
}

std::string_view negatedOp(std::string_view op) {
  if (op == "<") return ">=";
  if (op == ">=") return "<";
  if (op == ">") return "<=";
  if (op == "<=") return ">";
  if (op == "==") return "!=";
  if (op == "!=") return "==";
  return op;
}

int exprPrecedence(const Ast& ast, NodeId id) {
  const AstNode& n = ast.node(id);
  switch (n.kind) {
    case NodeKind::BinaryExpr: {
      static const std::map<std::string, int, std::less<>> prec = {
          {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},
          {"==", 6}, {"!=", 6}, {"<", 7},  {">", 7},  {"<=", 7},
          {">=", 7}, {"<<", 8}, {">>", 8}, {"+", 9},  {"-", 9},
          {"*", 10}, {"/", 10}, {"%", 10}, {",", -2}};
      auto it = prec.find(n.op);
      return it == prec.end() ? 0 : it->second;
    }
    case NodeKind::AssignExpr:
    case NodeKind::CompoundAssignExpr:
      return -1;
    case NodeKind::TernaryExpr:
      return 0;
    case NodeKind::CastExpr:
      return 11;
    case NodeKind::UnaryExpr:
      return n.flags & kUnaryPostfix ? 12 : 11;
    case NodeKind::OpaqueStmt:
      return -3;
    default:
      return 12;
  }
}

NodeId stripParens(const Ast& ast, NodeId id) {
  while (ast.kind(id) == NodeKind::ParenExpr) id = kids(ast, id)[0];
  return id;
}

bool canAbsorbElse(const Ast& ast, NodeId stmt) {
  const AstNode& n = ast.node(stmt);
  switch (n.kind) {
    case NodeKind::IfStmt:
      return n.children.size() < 3 || canAbsorbElse(ast, n.children[2]);
    case NodeKind::WhileStmt:
    case NodeKind::ForStmt:
    case NodeKind::SwitchStmt:
    case NodeKind::LabelStmt:
    case NodeKind::CaseLabel: {
      if (n.children.empty()) return false;
      const NodeId last = n.children.back();
      // A case label's only child may be its expression.
      if (n.kind == NodeKind::CaseLabel && n.op == "case" && n.children.size() < 2) {
        return false;
      }
      return canAbsorbElse(ast, last);
    }
    default:
      return false;
  }
}

bool hasOwnContinue(const Ast& ast, NodeId loop) {
  const NodeId body = ast.node(loop).kind == NodeKind::DoWhileStmt
                          ? kids(ast, loop)[0]
                          : kids(ast, loop).back();
  std::vector<NodeId> stack{body};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    const NodeKind k = ast.kind(cur);
    if (k == NodeKind::ContinueStmt) return true;
    if (isLoop(k)) continue;
    if (k == NodeKind::OpaqueStmt && spanHasKeyword(ast, ast.node(cur).span, "continue")) {
      return true;
    }
    for (NodeId c : kids(ast, cur)) stack.push_back(c);
  }
  return false;
}

bool containsKind(const Ast& ast, NodeId id, NodeKind kind) {
  for (NodeId c : ast.subtree(id)) {
    if (ast.kind(c) == kind) return true;
    // Opaque statements may hide labels; treat `ident :` conservatively only
    // for the label query.
    if (kind == NodeKind::LabelStmt && ast.kind(c) == NodeKind::OpaqueStmt) {
      const auto& toks = ast.tokens();
      const Span s = ast.node(c).span;
      auto it = std::lower_bound(toks.begin(), toks.end(), s.begin,
                                 [](const Token& t, uint32_t at) { return t.span.begin < at; });
      for (; it != toks.end() && it + 1 != toks.end() && it->span.end <= s.end; ++it) {
        if (it->kind == TokenKind::Identifier && ast.text((it + 1)->span) == ":") {
          return true;
        }
      }
    }
  }
  return false;
}

bool hasForeignCaseLabel(const Ast& ast, NodeId id) {
  for (NodeId c : ast.subtree(id)) {
    if (ast.kind(c) == NodeKind::OpaqueStmt &&
        (spanHasKeyword(ast, ast.node(c).span, "case") ||
         spanHasKeyword(ast, ast.node(c).span, "default"))) {
      return true;
    }
    if (ast.kind(c) != NodeKind::CaseLabel) continue;
    NodeId sw = ast.parent(c);
    while (sw != kNoNode && ast.kind(sw) != NodeKind::SwitchStmt) sw = ast.parent(sw);
    if (sw == kNoNode || !ast.isAncestor(id, sw)) return true;
  }
  return false;
}

bool hasStaticDecl(const Ast& ast, NodeId id) {
  for (NodeId c : ast.subtree(id)) {
    const AstNode& n = ast.node(c);
    if (n.kind == NodeKind::DeclStmt && spanHasKeyword(ast, n.span, "static")) {
      return true;
    }
    if (n.kind == NodeKind::OpaqueStmt && spanHasKeyword(ast, n.span, "static")) {
      return true;
    }
  }
  return false;
}

std::vector<std::string> identifiersIn(const Ast& ast, NodeId id) {
  std::vector<std::string> out;
  for (NodeId c : ast.subtree(id)) {
    const AstNode& n = ast.node(c);
    if (n.kind == NodeKind::Identifier) out.emplace_back(ast.text(c));
    if (n.kind == NodeKind::OpaqueStmt) spanIdentifiers(ast, n.span, out);
  }
  return out;
}

std::vector<std::string> declaredNamesIn(const Ast& ast, NodeId id, bool topLevelOnly) {
  std::vector<std::string> out;
  auto collect = [&](NodeId decl) {
    for (NodeId d : kids(ast, decl)) {
      if (ast.kind(d) == NodeKind::AssignExpr) d = kids(ast, d)[0];
      if (ast.kind(d) == NodeKind::Identifier) out.emplace_back(ast.text(d));
    }
  };
  if (topLevelOnly) {
    for (NodeId c : kids(ast, id)) {
      if (ast.kind(c) == NodeKind::DeclStmt) collect(c);
      if (ast.kind(c) == NodeKind::OpaqueStmt) spanIdentifiers(ast, ast.node(c).span, out);
    }
    return out;
  }
  for (NodeId c : ast.subtree(id)) {
    if (ast.kind(c) == NodeKind::DeclStmt) collect(c);
    // Opaque statements may declare anything they mention.
    if (ast.kind(c) == NodeKind::OpaqueStmt) spanIdentifiers(ast, ast.node(c).span, out);
  }
  return out;
}

NodeId singleWriteTarget(const Ast& ast, NodeId expr) {
  const AstNode& n = ast.node(expr);
  if (isIncDec(n)) {
    const NodeId c = n.children[0];
    return ast.kind(c) == NodeKind::Identifier ? c : kNoNode;
  }
  if (n.kind == NodeKind::AssignExpr || n.kind == NodeKind::CompoundAssignExpr) {
    const NodeId lhs = n.children[0];
    if (ast.kind(lhs) != NodeKind::Identifier) return kNoNode;
    return hasSideEffects(ast, n.children[1]) ? kNoNode : lhs;
  }
  return kNoNode;
}

NodeId deepestBinary(const Ast& ast, NodeId expr) {
  NodeId best = kNoNode;
  int bestDepth = -1;
  std::vector<std::pair<NodeId, int>> stack{{expr, 0}};
  while (!stack.empty()) {
    auto [cur, depth] = stack.back();
    stack.pop_back();
    const bool bin = ast.kind(cur) == NodeKind::BinaryExpr;
    if (bin) {
      const uint32_t at = ast.node(cur).span.begin;
      if (depth > bestDepth ||
          (depth == bestDepth && at < ast.node(best).span.begin)) {
        best = cur;
        bestDepth = depth;
      }
    }
    for (NodeId c : kids(ast, cur)) stack.push_back({c, bin ? depth + 1 : depth});
  }
  return best;
}

std::string freshTempName(const Ast& ast) {
  const auto names = ast.identifierNames();
  for (int k = 0; k < 100000; ++k) {
    std::string name = "tmp_" + std::to_string(k);
    if (!names.count(name)) return name;
  }
  return {};
}

}  // namespace natgvd
