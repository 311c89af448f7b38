#include "transforms/transforms.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace natgvd {

namespace {

std::string str(std::string_view v) { return std::string(v); }

const Token* tokenAtOrAfter(const Ast& ast, uint32_t offset) {
  const auto& toks = ast.tokens();
  auto it = std::lower_bound(toks.begin(), toks.end(), offset,
                             [](const Token& t, uint32_t at) { return t.span.begin < at; });
  return it == toks.end() ? nullptr : &*it;
}

const Token* tokenBefore(const Ast& ast, uint32_t offset) {
  const auto& toks = ast.tokens();
  auto it = std::lower_bound(toks.begin(), toks.end(), offset,
                             [](const Token& t, uint32_t at) { return t.span.end <= at; });
  return it == toks.begin() ? nullptr : &*(it - 1);
}

bool startsLine(const Ast& ast, uint32_t offset) {
  const std::string& s = ast.source();
  for (uint32_t i = offset; i > 0; --i) {
    const char c = s[i - 1];
    if (c == '\n') return true;
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

std::string indentOf(const Ast& ast, uint32_t offset) {
  const std::string& s = ast.source();
  uint32_t begin = offset;
  while (begin > 0 && s[begin - 1] != '\n') --begin;
  uint32_t end = begin;
  while (end < s.size() && (s[end] == ' ' || s[end] == '\t')) ++end;
  return s.substr(begin, end - begin);
}

std::string snippet(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  if (out.size() > 60) out = out.substr(0, 57) + "...";
  return out;
}

std::string braced(const std::string& stmt) { return "{ " + stmt + " }"; }

void check(const Ast& ast, const Site& site, TransformRule rule) {
  if (site.rule != rule) {
    throw Error(ErrorCode::Inapplicable, "site belongs to rule " + str(ruleName(site.rule)));
  }
  if (auto failed = failedPredicate(ast, site)) {
    throw Error(ErrorCode::Inapplicable,
                str(ruleName(rule)) + " not applicable at byte " +
                    std::to_string(site.ordinal) + ": " + str(*failed));
  }
}

RewritePlan finish(const Ast& ast, const Site& site, std::vector<Edit> edits,
                   std::string_view what) {
  RewritePlan plan;
  plan.edits = std::move(edits);
  plan.description = str(ruleName(site.rule)) + " @" + std::to_string(site.ordinal) +
                     ": " + str(what);
  for (const Span& c : ast.comments()) {
    for (const Edit& e : plan.edits) {
      if (e.span.contains(c) &&
          e.replacement.find(ast.text(c)) == std::string::npos) {
        plan.commentDropped = true;
      }
    }
  }
  if (plan.commentDropped) plan.description += " (comment dropped)";
  return plan;
}

const std::vector<NodeId>& kids(const Ast& ast, NodeId id) {
  return ast.node(id).children;
}

// Trailing `x++;`-style statement of a while body that can become the for
// update; kNoNode when hoisting is not allowed.
NodeId hoistableUpdate(const Ast& ast, NodeId loop) {
  const NodeId cond = kids(ast, loop)[0];
  const NodeId body = kids(ast, loop)[1];
  if (ast.kind(body) != NodeKind::CompoundStmt || kids(ast, body).empty()) {
    return kNoNode;
  }
  const NodeId last = kids(ast, body).back();
  if (ast.kind(last) != NodeKind::ExprStmt || kids(ast, last).size() != 1) {
    return kNoNode;
  }
  const NodeId expr = kids(ast, last)[0];
  const NodeId target = singleWriteTarget(ast, expr);
  if (target == kNoNode) return kNoNode;
  const auto condNames = identifiersIn(ast, cond);
  if (std::find(condNames.begin(), condNames.end(), ast.text(target)) == condNames.end()) {
    return kNoNode;
  }
  if (hasOwnContinue(ast, loop)) return kNoNode;
  const auto declared = declaredNamesIn(ast, body, false);
  for (const std::string& name : identifiersIn(ast, expr)) {
    if (std::find(declared.begin(), declared.end(), name) != declared.end()) {
      return kNoNode;
    }
  }
  return last;
}

}  // namespace

RewritePlan applyAssignSplit(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::AssignSplit);
  const NodeId stmt = site.nodeId;
  const NodeId assign = kids(ast, stmt)[0];
  const NodeId lhs = kids(ast, assign)[0];
  const NodeId rhs = kids(ast, assign)[1];
  const NodeId sub = deepestBinary(ast, rhs);
  NodeId target = sub;
  while (ast.kind(ast.parent(target)) == NodeKind::ParenExpr) target = ast.parent(target);

  const IntType subType = *exprIntegerType(ast, sub);
  const std::string lhsType = *declaredIntegerType(ast, ast.text(lhs));
  const std::string typeText = parseIntegerType(lhsType) == subType
                                   ? unqualifiedTypeText(lhsType)
                                   : str(intTypeName(subType));
  const std::string tmp = freshTempName(ast);
  const uint32_t at = ast.node(stmt).span.begin;
  const std::string sep = startsLine(ast, at) ? "\n" + indentOf(ast, at) : " ";
  std::vector<Edit> edits;
  edits.push_back({Span{at, at}, typeText + " " + tmp + " = " + str(ast.text(sub)) + ";" + sep});
  edits.push_back({ast.node(target).span, tmp});
  return finish(ast, site, std::move(edits),
                "extract `" + snippet(ast.text(sub)) + "` into " + tmp);
}

RewritePlan applyCompoundAssignSplit(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::CompoundAssignSplit);
  const AstNode& n = ast.node(site.nodeId);
  const NodeId lv = n.children[0];
  const NodeId e = n.children[1];
  const std::string op = n.op.substr(0, n.op.size() - 1);
  std::string rhs = str(ast.text(e));
  const NodeKind ek = ast.kind(e);
  if (ek != NodeKind::Identifier && ek != NodeKind::Literal && ek != NodeKind::ParenExpr) {
    rhs = "(" + rhs + ")";
  }
  const std::string lvText = str(ast.text(lv));
  std::vector<Edit> edits{{n.span, lvText + " = " + lvText + " " + op + " " + rhs}};
  return finish(ast, site, std::move(edits), "split `" + snippet(ast.text(site.nodeId)) + "`");
}

RewritePlan applyWhileToFor(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::WhileToFor);
  const AstNode& loop = ast.node(site.nodeId);
  const NodeId cond = loop.children[0];
  const NodeId body = loop.children[1];
  const Span condSpan = ast.node(cond).span;
  const Token* rparen = tokenAtOrAfter(ast, condSpan.end);
  const NodeId upd = hoistableUpdate(ast, site.nodeId);

  std::vector<Edit> edits;
  edits.push_back({Span{loop.span.begin, condSpan.begin}, "for (; "});
  const std::string header =
      upd != kNoNode ? "; " + str(ast.text(kids(ast, upd)[0])) + ")" : "; )";
  edits.push_back({Span{condSpan.end, rparen->span.end}, header});
  if (upd != kNoNode) {
    const auto& stmts = kids(ast, body);
    const uint32_t from = stmts.size() > 1 ? ast.node(stmts[stmts.size() - 2]).span.end
                                           : ast.node(body).span.begin + 1;
    edits.push_back({Span{from, ast.node(upd).span.end}, ""});
  }
  return finish(ast, site, std::move(edits),
                "while (" + snippet(ast.text(cond)) + ")" +
                    (upd != kNoNode ? " with hoisted update" : ""));
}

RewritePlan applyForToWhile(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::ForToWhile);
  const AstNode& loop = ast.node(site.nodeId);
  const ForClauses fc = ast.forClauses(site.nodeId);
  const Span bodySpan = ast.node(fc.body).span;
  const Token* rparen = tokenBefore(ast, bodySpan.begin);
  const std::string cond = fc.cond != kNoNode ? str(ast.text(fc.cond)) : "1";
  std::vector<Edit> edits;

  std::string header = "while (" + cond + ")";
  bool block = false;
  if (fc.init != kNoNode) {
    const bool decl = ast.kind(fc.init) == NodeKind::DeclStmt;
    const std::string init = str(ast.text(fc.init)) + (decl ? "" : ";");
    const NodeId parent = ast.parent(site.nodeId);
    block = decl || ast.kind(parent) != NodeKind::CompoundStmt;
    if (block) {
      header = "{ " + init + " " + header;
    } else if (startsLine(ast, loop.span.begin)) {
      header = init + "\n" + indentOf(ast, loop.span.begin) + header;
    } else {
      header = init + " " + header;
    }
  }
  edits.push_back({Span{loop.span.begin, rparen->span.end}, header});

  if (fc.update != kNoNode) {
    const std::string upd = str(ast.text(fc.update)) + ";";
    if (ast.kind(fc.body) == NodeKind::CompoundStmt) {
      const auto& stmts = kids(ast, fc.body);
      if (stmts.empty()) {
        const uint32_t close = bodySpan.end - 1;
        edits.push_back({Span{close, close}, " " + upd + " "});
      } else {
        const Span last = ast.node(stmts.back()).span;
        const Token* prev = tokenBefore(ast, last.begin);
        std::string sep = str(ast.text(Span{prev->span.end, last.begin}));
        const size_t nl = sep.rfind('\n');
        sep = nl == std::string::npos ? " " : sep.substr(nl);
        edits.push_back({Span{last.end, last.end}, sep + upd});
      }
    } else {
      edits.push_back({bodySpan, braced(str(ast.text(fc.body)) + " " + upd)});
    }
  }
  if (block) edits.push_back({Span{loop.span.end, loop.span.end}, " }"});
  return finish(ast, site, std::move(edits), "for (...) -> while (" + snippet(cond) + ")");
}

RewritePlan applyCondNegate(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::CondNegate);
  const NodeId cond = ast.ifCond(site.nodeId);
  const NodeId thenB = ast.ifThen(site.nodeId);
  const NodeId elseB = ast.ifElse(site.nodeId);
  const AstNode& c = ast.node(cond);
  std::vector<Edit> edits;
  std::string negated;
  if (c.kind == NodeKind::BinaryExpr && isComparisonOp(c.op) &&
      exprIntegerType(ast, c.children[0]) && exprIntegerType(ast, c.children[1])) {
    edits.push_back({c.opSpan, str(negatedOp(c.op))});
    negated = "mirror " + c.op + " to " + str(negatedOp(c.op));
  } else {
    edits.push_back({c.span, "!(" + str(ast.text(cond)) + ")"});
    negated = "wrap in !()";
  }
  std::string newThen = str(ast.text(elseB));
  if (canAbsorbElse(ast, elseB)) newThen = braced(newThen);
  edits.push_back({ast.node(thenB).span, newThen});
  edits.push_back({ast.node(elseB).span, str(ast.text(thenB))});
  return finish(ast, site, std::move(edits),
                "negate `" + snippet(ast.text(cond)) + "` (" + negated + "), swap branches");
}

RewritePlan applyCondSplitAnd(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::CondSplitAnd);
  const NodeId cond = ast.ifCond(site.nodeId);
  const NodeId thenB = ast.ifThen(site.nodeId);
  const NodeId elseB = ast.ifElse(site.nodeId);
  const NodeId a = kids(ast, cond)[0];
  const NodeId b = kids(ast, cond)[1];
  std::string inner = "if (" + str(ast.text(b)) + ") ";
  std::string s = str(ast.text(thenB));
  if (elseB != kNoNode) {
    if (canAbsorbElse(ast, thenB)) s = braced(s);
    inner += s + " else " + str(ast.text(elseB));
  } else {
    inner += s;
  }
  std::vector<Edit> edits{{ast.node(cond).span, str(ast.text(a))},
                          {ast.node(thenB).span, braced(inner)}};
  return finish(ast, site, std::move(edits), "split `" + snippet(ast.text(cond)) + "`");
}

RewritePlan applyCondSplitOr(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::CondSplitOr);
  const NodeId cond = ast.ifCond(site.nodeId);
  const NodeId thenB = ast.ifThen(site.nodeId);
  const NodeId elseB = ast.ifElse(site.nodeId);
  const NodeId a = kids(ast, cond)[0];
  const NodeId b = kids(ast, cond)[1];
  const std::string s = str(ast.text(thenB));
  const bool absorbs = canAbsorbElse(ast, thenB);
  const std::string first = absorbs ? braced(s) : s;
  const std::string second = absorbs && elseB != kNoNode ? braced(s) : s;
  std::vector<Edit> edits{
      {ast.node(cond).span, str(ast.text(a))},
      {ast.node(thenB).span, first + " else if (" + str(ast.text(b)) + ") " + second}};
  return finish(ast, site, std::move(edits), "split `" + snippet(ast.text(cond)) + "`");
}

RewritePlan applyCondReorder(const Ast& ast, const Site& site) {
  check(ast, site, TransformRule::CondReorder);
  const AstNode& n = ast.node(site.nodeId);
  const NodeId l = n.children[0];
  const NodeId r = n.children[1];
  const int prec = exprPrecedence(ast, site.nodeId);
  std::string lText = str(ast.text(l));
  std::string rText = str(ast.text(r));
  if (exprPrecedence(ast, l) <= prec) lText = "(" + lText + ")";
  if (exprPrecedence(ast, r) < prec) rText = "(" + rText + ")";
  const std::string ws1 = str(ast.text(Span{ast.node(l).span.end, n.opSpan.begin}));
  const std::string ws2 = str(ast.text(Span{n.opSpan.end, ast.node(r).span.begin}));
  const std::string replacement = rText + ws1 + str(mirroredOp(n.op)) + ws2 + lText;
  std::vector<Edit> edits{{n.span, replacement}};
  return finish(ast, site, std::move(edits),
                "`" + snippet(ast.text(site.nodeId)) + "` -> `" + snippet(replacement) + "`");
}

RewritePlan applyRule(const Ast& ast, const Site& site) {
  switch (site.rule) {
    case TransformRule::AssignSplit: return applyAssignSplit(ast, site);
    case TransformRule::CompoundAssignSplit: return applyCompoundAssignSplit(ast, site);
    case TransformRule::WhileToFor: return applyWhileToFor(ast, site);
    case TransformRule::ForToWhile: return applyForToWhile(ast, site);
    case TransformRule::CondNegate: return applyCondNegate(ast, site);
    case TransformRule::CondSplitAnd: return applyCondSplitAnd(ast, site);
    case TransformRule::CondSplitOr: return applyCondSplitOr(ast, site);
    case TransformRule::CondReorder: return applyCondReorder(ast, site);
  }
  throw Error(ErrorCode::Internal, "unknown rule");
}

std::string applyToText(const Ast& ast, const Site& site) {
  return rewrite(ast.source(), applyRule(ast, site).edits);
}

}  // namespace natgvd
