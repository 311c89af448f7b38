#include "parser/ast.hpp"

#include <functional>

namespace natgvd {

std::string_view nodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::FunctionDef: return "FunctionDef";
    case NodeKind::ParamList: return "ParamList";
    case NodeKind::CompoundStmt: return "CompoundStmt";
    case NodeKind::IfStmt: return "IfStmt";
    case NodeKind::WhileStmt: return "WhileStmt";
    case NodeKind::ForStmt: return "ForStmt";
    case NodeKind::DoWhileStmt: return "DoWhileStmt";
    case NodeKind::SwitchStmt: return "SwitchStmt";
    case NodeKind::CaseLabel: return "CaseLabel";
    case NodeKind::ReturnStmt: return "ReturnStmt";
    case NodeKind::BreakStmt: return "BreakStmt";
    case NodeKind::ContinueStmt: return "ContinueStmt";
    case NodeKind::GotoStmt: return "GotoStmt";
    case NodeKind::LabelStmt: return "LabelStmt";
    case NodeKind::DeclStmt: return "DeclStmt";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::AssignExpr: return "AssignExpr";
    case NodeKind::CompoundAssignExpr: return "CompoundAssignExpr";
    case NodeKind::BinaryExpr: return "BinaryExpr";
    case NodeKind::UnaryExpr: return "UnaryExpr";
    case NodeKind::TernaryExpr: return "TernaryExpr";
    case NodeKind::CallExpr: return "CallExpr";
    case NodeKind::IndexExpr: return "IndexExpr";
    case NodeKind::MemberExpr: return "MemberExpr";
    case NodeKind::CastExpr: return "CastExpr";
    case NodeKind::ParenExpr: return "ParenExpr";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::Literal: return "Literal";
    case NodeKind::OpaqueStmt: return "OpaqueStmt";
  }
  return "?";
}

ForClauses Ast::forClauses(NodeId id) const {
  const AstNode& n = node(id);
  ForClauses out;
  size_t i = 0;
  if (n.flags & kForHasInit) out.init = n.children.at(i++);
  if (n.flags & kForHasCond) out.cond = n.children.at(i++);
  if (n.flags & kForHasUpdate) out.update = n.children.at(i++);
  out.body = n.children.at(i);
  return out;
}

NodeId Ast::paramList() const {
  for (NodeId c : node(root_).children) {
    if (kind(c) == NodeKind::ParamList) return c;
  }
  return kNoNode;
}

std::vector<NodeId> Ast::subtree(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = node(cur).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool Ast::isAncestor(NodeId ancestor, NodeId id) const {
  for (NodeId cur = id; cur != kNoNode; cur = parent(cur)) {
    if (cur == ancestor) return true;
  }
  return false;
}

std::set<std::string, std::less<>> Ast::identifierNames() const {
  std::set<std::string, std::less<>> out;
  for (const Token& t : tokens_) {
    if (t.kind == TokenKind::Identifier) out.emplace(text(t.span));
  }
  return out;
}

AstBuilder::AstBuilder(std::string source) { ast_.source_ = std::move(source); }

NodeId AstBuilder::add(NodeKind kind) {
  AstNode n;
  n.id = static_cast<NodeId>(ast_.nodes_.size());
  n.kind = kind;
  ast_.nodes_.push_back(std::move(n));
  return ast_.nodes_.back().id;
}

void AstBuilder::setTokens(std::vector<Token> tokens) {
  for (Token& t : tokens) t.text = {};
  ast_.tokens_ = std::move(tokens);
}

Ast AstBuilder::finish() && {
  ast_.parents_.assign(ast_.nodes_.size(), kNoNode);
  for (const AstNode& n : ast_.nodes_) {
    for (NodeId c : n.children) ast_.parents_[static_cast<size_t>(c)] = n.id;
  }
  return std::move(ast_);
}

std::string shapeOf(const Ast& ast, NodeId id, bool withSpans) {
  const uint32_t base = ast.node(id).span.begin;
  std::string out;
  std::function<void(NodeId)> walk = [&](NodeId cur) {
    const AstNode& n = ast.node(cur);
    out += nodeKindName(n.kind);
    if (!n.op.empty()) {
      out += '[';
      out += n.op;
      out += ']';
    }
    if (withSpans) {
      out += '@';
      out += std::to_string(n.span.begin - base);
      out += '+';
      out += std::to_string(n.span.size());
    }
    if (!n.children.empty()) {
      out += '(';
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ',';
        walk(n.children[i]);
      }
      out += ')';
    }
  };
  walk(id);
  return out;
}

}  // namespace natgvd
