#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parser/lexer.hpp"

namespace natgvd {

using NodeId = int32_t;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind : uint8_t {
  FunctionDef,
  ParamList,
  CompoundStmt,
  IfStmt,
  WhileStmt,
  ForStmt,
  DoWhileStmt,
  SwitchStmt,
  CaseLabel,
  ReturnStmt,
  BreakStmt,
  ContinueStmt,
  GotoStmt,
  LabelStmt,
  DeclStmt,
  ExprStmt,
  AssignExpr,
  CompoundAssignExpr,
  BinaryExpr,
  UnaryExpr,
  TernaryExpr,
  CallExpr,
  IndexExpr,
  MemberExpr,
  CastExpr,
  ParenExpr,
  Identifier,
  Literal,
  OpaqueStmt,
};

std::string_view nodeKindName(NodeKind kind);

// ForStmt clause presence bits stored in AstNode::flags.
inline constexpr uint8_t kForHasInit = 1 << 0;
inline constexpr uint8_t kForHasCond = 1 << 1;
inline constexpr uint8_t kForHasUpdate = 1 << 2;
// UnaryExpr: operator follows its operand (x++, x--).
inline constexpr uint8_t kUnaryPostfix = 1 << 3;

struct AstNode {
  NodeId id = kNoNode;
  NodeKind kind = NodeKind::OpaqueStmt;
  Span span;
  std::vector<NodeId> children;
  // Operator token for expression kinds ("+", "+=", "->", "sizeof", ...).
  std::string op;
  Span opSpan;
  // Verbatim declared type text (DeclStmt, declarator Identifiers, ParamList
  // entries, CastExpr, FunctionDef return type, sizeof(type)).
  std::string typeText;
  // Label name (LabelStmt/GotoStmt), member name (MemberExpr),
  // function name (FunctionDef).
  std::string name;
  uint8_t flags = 0;
};

struct ForClauses {
  NodeId init = kNoNode;
  NodeId cond = kNoNode;
  NodeId update = kNoNode;
  NodeId body = kNoNode;
};

// Span-anchored syntax tree over one function definition. Immutable once
// built; all node spans index into source().
class Ast {
 public:
  Ast() = default;

  const std::string& source() const { return source_; }
  NodeId root() const { return root_; }
  size_t size() const { return nodes_.size(); }
  const std::vector<AstNode>& nodes() const { return nodes_; }
  const AstNode& node(NodeId id) const { return nodes_.at(static_cast<size_t>(id)); }
  NodeKind kind(NodeId id) const { return node(id).kind; }
  NodeId parent(NodeId id) const { return parents_.at(static_cast<size_t>(id)); }

  std::string_view text(NodeId id) const { return text(node(id).span); }
  std::string_view text(Span span) const {
    return std::string_view(source_).substr(span.begin, span.size());
  }

  // Byte range of everything before the function definition.
  Span preamble() const { return Span{0, node(root_).span.begin}; }
  Span functionSpan() const { return node(root_).span; }
  std::string_view functionText() const { return text(functionSpan()); }

  const std::vector<Span>& comments() const { return comments_; }
  // Tokens of the whole source. Token::text is left empty because Ast owns
  // (and may move) its buffer; slice with text(token.span) instead.
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::set<std::string, std::less<>>& typedefNames() const {
    return typedefs_;
  }

  // Structural accessors. They assume the node has the named kind.
  NodeId ifCond(NodeId id) const { return node(id).children.at(0); }
  NodeId ifThen(NodeId id) const { return node(id).children.at(1); }
  NodeId ifElse(NodeId id) const {
    const auto& c = node(id).children;
    return c.size() > 2 ? c[2] : kNoNode;
  }
  ForClauses forClauses(NodeId id) const;
  NodeId functionBody() const { return node(root_).children.back(); }
  NodeId paramList() const;

  // Preorder walk of the subtree rooted at id.
  std::vector<NodeId> subtree(NodeId id) const;
  bool isAncestor(NodeId ancestor, NodeId id) const;

  // Identifier tokens anywhere in the source, preamble included.
  std::set<std::string, std::less<>> identifierNames() const;

 private:
  friend class AstBuilder;

  std::string source_;
  std::vector<AstNode> nodes_;
  std::vector<NodeId> parents_;
  NodeId root_ = kNoNode;
  std::vector<Span> comments_;
  std::vector<Token> tokens_;
  std::set<std::string, std::less<>> typedefs_;
};

// Mutable construction interface used by the parser.
class AstBuilder {
 public:
  explicit AstBuilder(std::string source);

  const std::string& source() const { return ast_.source_; }
  NodeId add(NodeKind kind);
  AstNode& at(NodeId id) { return ast_.nodes_[static_cast<size_t>(id)]; }
  size_t size() const { return ast_.nodes_.size(); }
  void truncate(size_t count) { ast_.nodes_.resize(count); }
  void setRoot(NodeId root) { ast_.root_ = root; }
  void setComments(std::vector<Span> comments) { ast_.comments_ = std::move(comments); }
  void setTokens(std::vector<Token> tokens);
  std::set<std::string, std::less<>>& typedefs() { return ast_.typedefs_; }

  Ast finish() &&;

 private:
  Ast ast_;
};

// Structural fingerprint: kinds, operators and span tree, relative to the
// root's start so fragments compare equal to the subtrees they came from.
std::string shapeOf(const Ast& ast, NodeId id, bool withSpans = true);

}  // namespace natgvd
