#include "metrics/rename_baseline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "parser/parser.hpp"
#include "parser/rewrite.hpp"

namespace natgvd {

std::string renameBaseline(std::string_view unitText) {
  const Ast ast = parse(unitText);
  const auto taken = ast.identifierNames();

  // Declared names in source order: parameters, then declarators.
  std::vector<std::string> declared;
  auto addDeclared = [&](NodeId ident) {
    std::string name(ast.text(ident));
    if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
      declared.push_back(std::move(name));
    }
  };
  const NodeId params = ast.paramList();
  if (params != kNoNode) {
    for (NodeId p : ast.node(params).children) {
      if (ast.kind(p) == NodeKind::Identifier) addDeclared(p);
    }
  }
  for (NodeId id : ast.subtree(ast.functionBody())) {
    if (ast.kind(id) != NodeKind::DeclStmt) continue;
    for (NodeId d : ast.node(id).children) {
      if (ast.kind(d) == NodeKind::Identifier) addDeclared(d);
      if (ast.kind(d) == NodeKind::AssignExpr) addDeclared(ast.node(d).children[0]);
    }
  }

  std::map<std::string, std::string, std::less<>> fresh;
  int counter = 0;
  for (const std::string& name : declared) {
    std::string candidate;
    do {
      candidate = "v_" + std::to_string(counter++);
    } while (taken.count(candidate));
    fresh[name] = candidate;
  }

  // Rename every identifier token of the function that names a local, except
  // member names and labels.
  std::vector<Edit> edits;
  const Span fn = ast.functionSpan();
  const auto& toks = ast.tokens();
  // Label names live in their own namespace: the token opening a labelled
  // statement and the token after `goto` keep their spelling.
  std::set<uint32_t> labelTokens;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind == NodeKind::LabelStmt) labelTokens.insert(n.span.begin);
  }
  for (size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokenKind::Identifier || t.span.begin < fn.begin || t.span.end > fn.end) continue;
    auto it = fresh.find(ast.text(t.span));
    if (it == fresh.end()) continue;
    if (i > 0 && toks[i - 1].kind == TokenKind::Punct) {
      const std::string_view prev = ast.text(toks[i - 1].span);
      if (prev == "." || prev == "->") continue;
    }
    if (labelTokens.count(t.span.begin)) continue;
    if (i > 0 && ast.text(toks[i - 1].span) == "goto") continue;
    edits.push_back(Edit{t.span, it->second});
  }
  return rewrite(ast.source(), edits);
}

}  // namespace natgvd
