#include "parser/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "common/error.hpp"

namespace natgvd {

namespace {

// Internal backtracking signal. Never escapes this file.
struct SyntaxFailure {};

constexpr std::string_view kStorageOrQualifier[] = {
    "static",    "extern",      "register",     "auto",       "typedef",
    "const",     "volatile",    "restrict",     "inline",     "__inline",
    "__inline__", "__restrict", "__restrict__", "__const",    "_Noreturn",
    "_Thread_local", "__extension__", "__volatile__",
};

constexpr std::string_view kBaseType[] = {
    "void",   "char",     "short",   "int",      "long",       "float",
    "double", "signed",   "unsigned", "_Bool",   "_Complex",   "__signed__",
};

template <size_t N>
bool contains(const std::string_view (&set)[N], std::string_view word) {
  return std::find(std::begin(set), std::end(set), word) != std::end(set);
}

bool isQualifier(std::string_view w) {
  return w == "const" || w == "volatile" || w == "restrict" ||
         w == "__restrict" || w == "__restrict__" || w == "__const" ||
         w == "_Atomic" || w == "__volatile__";
}

int binaryPrecedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

bool isAssignOp(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
         op == "%=" || op == "&=" || op == "|=" || op == "^=" || op == "<<=" ||
         op == ">>=";
}

bool endsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

class Parser {
 public:
  Parser(AstBuilder& b, const std::vector<Token>& toks,
         const std::vector<size_t>& match, size_t lo, size_t hi)
      : b_(b), toks_(toks), match_(match), pos_(lo), hi_(hi) {}

  size_t pos() const { return pos_; }
  void setPos(size_t p) { pos_ = p; }
  bool atEnd() const { return pos_ >= hi_; }

  NodeId parseExpression() {
    const size_t first = pos_;
    NodeId lhs = parseAssignment();
    while (isPunct(0, ",")) {
      NodeId bin = openOp(NodeKind::BinaryExpr);
      NodeId rhs = parseAssignment();
      b_.at(bin).children = {lhs, rhs};
      lhs = close(bin, first);
    }
    return lhs;
  }

  NodeId parseAssignment() {
    const size_t first = pos_;
    NodeId lhs = parseConditional();
    if (!atEnd() && tok().kind == TokenKind::Punct && isAssignOp(tok().text)) {
      NodeId n = openOp(tok().text == "=" ? NodeKind::AssignExpr
                                          : NodeKind::CompoundAssignExpr);
      NodeId rhs = parseAssignment();
      b_.at(n).children = {lhs, rhs};
      return close(n, first);
    }
    return lhs;
  }

  NodeId parseStatement() {
    const size_t save = pos_;
    const size_t nodes = b_.size();
    try {
      return parseStatementInner();
    } catch (const SyntaxFailure&) {
      pos_ = save;
      b_.truncate(nodes);
      return parseOpaqueStatement();
    }
  }

  NodeId parseCompound() {
    const size_t first = pos_;
    expectPunct("{");
    NodeId n = b_.add(NodeKind::CompoundStmt);
    while (!isPunct(0, "}")) {
      if (atEnd()) fail();
      NodeId s = parseStatement();
      b_.at(n).children.push_back(s);
    }
    ++pos_;
    return close(n, first);
  }

  // Parameter declarations between the parentheses at [lparen, rparen].
  void parseParams(NodeId list, size_t lparen, size_t rparen) {
    size_t start = lparen + 1;
    for (size_t i = lparen + 1; i <= rparen; ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Punct &&
          (t.text == "(" || t.text == "[" || t.text == "{") && i != rparen) {
        i = match_[i];
        continue;
      }
      if (i == rparen || (t.kind == TokenKind::Punct && t.text == ",")) {
        parseOneParam(list, start, i);
        start = i + 1;
      }
    }
  }

  NodeId parseDeclaration() {
    const size_t first = pos_;
    NodeId decl = b_.add(NodeKind::DeclStmt);
    const size_t specBegin = pos_;
    const bool isTypedef = parseDeclSpecifiers();
    if (pos_ == specBegin) fail();
    const std::string base(spanText(specBegin, pos_));
    b_.at(decl).typeText = base;
    if (isPunct(0, ";")) {
      ++pos_;
      return close(decl, first);
    }
    while (true) {
      const size_t declBegin = pos_;
      std::string mods;
      std::optional<size_t> nameTok = parseDeclarator(mods);
      if (!nameTok) fail();
      NodeId ident = b_.add(NodeKind::Identifier);
      b_.at(ident).span = toks_[*nameTok].span;
      b_.at(ident).typeText = mods.empty() ? base : base + " " + mods;
      if (isTypedef) b_.typedefs().emplace(toks_[*nameTok].text);
      NodeId item = ident;
      if (isPunct(0, "=")) {
        NodeId assign = openOp(NodeKind::AssignExpr);
        NodeId init = isPunct(0, "{") ? parseBalancedOpaque() : parseAssignment();
        b_.at(assign).children = {ident, init};
        item = close(assign, declBegin);
      }
      b_.at(decl).children.push_back(item);
      if (isPunct(0, ",")) {
        ++pos_;
        continue;
      }
      break;
    }
    expectPunct(";");
    return close(decl, first);
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& tok(size_t k = 0) const {
    if (pos_ + k >= hi_) throw SyntaxFailure{};
    return toks_[pos_ + k];
  }
  bool has(size_t k) const { return pos_ + k < hi_; }
  bool isPunct(size_t k, std::string_view p) const {
    return has(k) && toks_[pos_ + k].kind == TokenKind::Punct &&
           toks_[pos_ + k].text == p;
  }
  bool isKw(size_t k, std::string_view w) const {
    return has(k) && toks_[pos_ + k].kind == TokenKind::Keyword &&
           toks_[pos_ + k].text == w;
  }
  bool isIdent(size_t k) const {
    return has(k) && toks_[pos_ + k].kind == TokenKind::Identifier;
  }
  void expectPunct(std::string_view p) {
    if (!isPunct(0, p)) fail();
    ++pos_;
  }
  [[noreturn]] static void fail() { throw SyntaxFailure{}; }

  std::string_view spanText(size_t firstTok, size_t endTok) const {
    const auto& src = b_.source();
    const uint32_t begin = toks_[firstTok].span.begin;
    const uint32_t end = toks_[endTok - 1].span.end;
    return std::string_view(src).substr(begin, end - begin);
  }

  NodeId close(NodeId id, size_t firstTok) {
    b_.at(id).span = Span{toks_[firstTok].span.begin, toks_[pos_ - 1].span.end};
    return id;
  }

  // Creates an operator node from the current token and consumes it.
  NodeId openOp(NodeKind kind) {
    NodeId n = b_.add(kind);
    b_.at(n).op = std::string(tok().text);
    b_.at(n).opSpan = tok().span;
    ++pos_;
    return n;
  }

  NodeId leaf(NodeKind kind) {
    NodeId n = b_.add(kind);
    b_.at(n).span = tok().span;
    ++pos_;
    return n;
  }

  bool isTypedefName(std::string_view w) const {
    return b_.typedefs().count(w) > 0;
  }

  bool isTypeKeyword(const Token& t) const {
    if (t.kind != TokenKind::Keyword) return false;
    return contains(kBaseType, t.text) || t.text == "struct" ||
           t.text == "union" || t.text == "enum" || isQualifier(t.text);
  }

  // True when the parenthesis at pos_+k opens a type name (cast, sizeof,
  // compound literal).
  bool parenOpensTypeName(size_t k) const {
    if (!isPunct(k, "(") || !has(k + 1)) return false;
    const Token& t = toks_[pos_ + k + 1];
    if (isTypeKeyword(t)) return true;
    if (t.kind != TokenKind::Identifier) return false;
    if (isTypedefName(t.text) || endsWith(t.text, "_t")) return true;
    size_t j = k + 2;
    if (isPunct(j, "*")) {
      while (isPunct(j, "*") ||
             (has(j) && toks_[pos_ + j].kind == TokenKind::Keyword &&
              isQualifier(toks_[pos_ + j].text))) {
        ++j;
      }
      return isPunct(j, ")");
    }
    if (isPunct(j, ")") && has(j + 1)) {
      const TokenKind after = toks_[pos_ + j + 1].kind;
      return after == TokenKind::Identifier || after == TokenKind::Number ||
             after == TokenKind::Char || after == TokenKind::String;
    }
    return false;
  }

  // --- expressions ---------------------------------------------------------

  NodeId parseConditional() {
    const size_t first = pos_;
    NodeId cond = parseBinary(1);
    if (isPunct(0, "?")) {
      NodeId n = b_.add(NodeKind::TernaryExpr);
      b_.at(n).op = "?:";
      b_.at(n).opSpan = tok().span;
      ++pos_;
      NodeId a = parseExpression();
      expectPunct(":");
      NodeId c = parseConditional();
      b_.at(n).children = {cond, a, c};
      return close(n, first);
    }
    return cond;
  }

  NodeId parseBinary(int minPrec) {
    const size_t first = pos_;
    NodeId lhs = parseCast();
    while (has(0) && tok().kind == TokenKind::Punct) {
      const int prec = binaryPrecedence(tok().text);
      if (prec == 0 || prec < minPrec) break;
      NodeId n = openOp(NodeKind::BinaryExpr);
      NodeId rhs = parseBinary(prec + 1);
      b_.at(n).children = {lhs, rhs};
      lhs = close(n, first);
    }
    return lhs;
  }

  NodeId parseCast() {
    if (parenOpensTypeName(0)) {
      const size_t first = pos_;
      const size_t rparen = match_[pos_];
      const std::string typeText(spanText(pos_ + 1, rparen));
      if (rparen + 1 < hi_ && toks_[rparen + 1].kind == TokenKind::Punct &&
          toks_[rparen + 1].text == "{") {
        // Compound literal: kept opaque.
        NodeId n = b_.add(NodeKind::OpaqueStmt);
        pos_ = match_[rparen + 1] + 1;
        return close(n, first);
      }
      NodeId n = b_.add(NodeKind::CastExpr);
      b_.at(n).typeText = typeText;
      b_.at(n).op = "(cast)";
      b_.at(n).opSpan = Span{toks_[first].span.begin, toks_[rparen].span.end};
      pos_ = rparen + 1;
      NodeId operand = parseCast();
      b_.at(n).children = {operand};
      return close(n, first);
    }
    return parseUnary();
  }

  NodeId parseUnary() {
    const size_t first = pos_;
    const Token& t = tok();
    if (t.kind == TokenKind::Punct && (t.text == "++" || t.text == "--")) {
      NodeId n = openOp(NodeKind::UnaryExpr);
      NodeId operand = parseUnary();
      b_.at(n).children = {operand};
      return close(n, first);
    }
    if (t.kind == TokenKind::Punct &&
        (t.text == "+" || t.text == "-" || t.text == "!" || t.text == "~" ||
         t.text == "*" || t.text == "&")) {
      NodeId n = openOp(NodeKind::UnaryExpr);
      NodeId operand = parseCast();
      b_.at(n).children = {operand};
      return close(n, first);
    }
    if (t.kind == TokenKind::Keyword &&
        (t.text == "sizeof" || t.text == "_Alignof")) {
      NodeId n = openOp(NodeKind::UnaryExpr);
      if (parenOpensTypeName(0)) {
        const size_t rparen = match_[pos_];
        b_.at(n).typeText = std::string(spanText(pos_ + 1, rparen));
        pos_ = rparen + 1;
        return close(n, first);
      }
      NodeId operand = parseUnary();
      b_.at(n).children = {operand};
      return close(n, first);
    }
    if (t.kind == TokenKind::Keyword && t.text == "__extension__") {
      ++pos_;
      return parseCast();
    }
    return parsePostfix();
  }

  NodeId parsePostfix() {
    const size_t first = pos_;
    NodeId e = parsePrimary();
    while (has(0) && tok().kind == TokenKind::Punct) {
      const std::string_view p = tok().text;
      if (p == "[") {
        NodeId n = b_.add(NodeKind::IndexExpr);
        b_.at(n).op = "[]";
        b_.at(n).opSpan = tok().span;
        ++pos_;
        NodeId idx = parseExpression();
        expectPunct("]");
        b_.at(n).children = {e, idx};
        e = close(n, first);
      } else if (p == "(") {
        NodeId n = b_.add(NodeKind::CallExpr);
        b_.at(n).op = "()";
        b_.at(n).opSpan = tok().span;
        ++pos_;
        std::vector<NodeId> kids{e};
        if (!isPunct(0, ")")) {
          while (true) {
            kids.push_back(parseAssignment());
            if (isPunct(0, ",")) {
              ++pos_;
              continue;
            }
            break;
          }
        }
        expectPunct(")");
        b_.at(n).children = std::move(kids);
        e = close(n, first);
      } else if (p == "." || p == "->") {
        NodeId n = openOp(NodeKind::MemberExpr);
        if (!isIdent(0)) fail();
        b_.at(n).name = std::string(tok().text);
        ++pos_;
        b_.at(n).children = {e};
        e = close(n, first);
      } else if (p == "++" || p == "--") {
        NodeId n = openOp(NodeKind::UnaryExpr);
        b_.at(n).flags |= kUnaryPostfix;
        b_.at(n).children = {e};
        e = close(n, first);
      } else {
        break;
      }
    }
    return e;
  }

  NodeId parsePrimary() {
    const Token& t = tok();
    switch (t.kind) {
      case TokenKind::Identifier:
        return leaf(NodeKind::Identifier);
      case TokenKind::Number:
      case TokenKind::Char:
        return leaf(NodeKind::Literal);
      case TokenKind::String: {
        const size_t first = pos_;
        NodeId n = b_.add(NodeKind::Literal);
        while (has(0) && tok().kind == TokenKind::String) ++pos_;
        return close(n, first);
      }
      case TokenKind::Punct:
        if (t.text == "(") {
          if (isPunct(1, "{")) fail();  // statement expression
          const size_t first = pos_;
          NodeId n = b_.add(NodeKind::ParenExpr);
          ++pos_;
          NodeId inner = parseExpression();
          expectPunct(")");
          b_.at(n).children = {inner};
          return close(n, first);
        }
        fail();
      default:
        fail();
    }
  }

  // Brace initializer or other balanced group kept as a childless opaque node.
  NodeId parseBalancedOpaque() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::OpaqueStmt);
    pos_ = match_[pos_] + 1;
    return close(n, first);
  }

  // Expression that must be followed by `closer`. Falls back to an opaque node
  // covering the balanced tokens up to the closer. Does not consume it.
  NodeId parseDelimited(std::string_view closer) {
    const size_t save = pos_;
    const size_t nodes = b_.size();
    try {
      NodeId e = parseExpression();
      if (isPunct(0, closer)) return e;
    } catch (const SyntaxFailure&) {
    }
    pos_ = save;
    b_.truncate(nodes);
    const size_t first = pos_;
    while (!atEnd() && !isPunct(0, closer)) {
      const Token& t = tok();
      if (t.kind == TokenKind::Punct &&
          (t.text == "(" || t.text == "[" || t.text == "{")) {
        pos_ = match_[pos_] + 1;
        continue;
      }
      if (t.kind == TokenKind::Punct &&
          (t.text == ")" || t.text == "]" || t.text == "}")) {
        fail();
      }
      ++pos_;
    }
    if (pos_ == first || atEnd()) fail();
    NodeId n = b_.add(NodeKind::OpaqueStmt);
    return close(n, first);
  }

  // --- declarations --------------------------------------------------------

  bool identIsTypeAt(size_t k, bool sawType) const {
    if (sawType || !isIdent(k)) return false;
    const std::string_view w = toks_[pos_ + k].text;
    if (isTypedefName(w)) return true;
    if (isIdent(k + 1)) return true;
    if (isPunct(k + 1, "*")) return true;
    return false;
  }

  // Consumes declaration specifiers. Returns true if `typedef` was among them.
  bool parseDeclSpecifiers() {
    bool sawType = false;
    bool isTypedef = false;
    while (has(0)) {
      const Token& t = tok();
      if (t.kind == TokenKind::Keyword) {
        if (contains(kStorageOrQualifier, t.text)) {
          if (t.text == "typedef") isTypedef = true;
          ++pos_;
          continue;
        }
        if (contains(kBaseType, t.text)) {
          sawType = true;
          ++pos_;
          continue;
        }
        if (t.text == "struct" || t.text == "union" || t.text == "enum") {
          ++pos_;
          skipAttributes();
          if (isIdent(0)) ++pos_;
          if (isPunct(0, "{")) pos_ = match_[pos_] + 1;
          sawType = true;
          continue;
        }
        if (t.text == "__attribute__" || t.text == "_Alignas" ||
            t.text == "_Atomic") {
          ++pos_;
          if (isPunct(0, "(")) pos_ = match_[pos_] + 1;
          if (t.text == "_Atomic") sawType = true;
          continue;
        }
        break;
      }
      if (identIsTypeAt(0, sawType)) {
        sawType = true;
        ++pos_;
        continue;
      }
      break;
    }
    return isTypedef;
  }

  void skipAttributes() {
    while ((isKw(0, "__attribute__") || isKw(0, "__asm__") || isKw(0, "asm")) &&
           isPunct(1, "(")) {
      ++pos_;
      pos_ = match_[pos_] + 1;
    }
  }

  // Returns the name token (if any) and appends pointer/array/function
  // modifiers to `mods`.
  std::optional<size_t> parseDeclarator(std::string& mods) {
    std::optional<size_t> name;
    std::string prefix;
    while (isPunct(0, "*")) {
      prefix += '*';
      ++pos_;
      while (has(0) && tok().kind == TokenKind::Keyword && isQualifier(tok().text)) {
        ++pos_;
      }
    }
    skipAttributes();
    std::string inner;
    if (isIdent(0)) {
      name = pos_;
      ++pos_;
    } else if (isPunct(0, "(") && (isPunct(1, "*") || isPunct(1, "("))) {
      ++pos_;
      name = parseDeclarator(inner);
      expectPunct(")");
      inner = "(" + inner + ")";
    }
    std::string suffix;
    while (isPunct(0, "[") || isPunct(0, "(")) {
      suffix += isPunct(0, "[") ? "[]" : "()";
      pos_ = match_[pos_] + 1;
    }
    skipAttributes();
    mods += prefix + inner + suffix;
    return name;
  }

  void parseOneParam(NodeId list, size_t begin, size_t end) {
    if (begin >= end) return;
    Parser sub(b_, toks_, match_, begin, end);
    const size_t nodes = b_.size();
    try {
      const size_t specBegin = sub.pos_;
      sub.parseDeclSpecifiers();
      if (sub.pos_ == specBegin) return;
      const std::string base(spanText(specBegin, sub.pos_));
      std::string mods;
      std::optional<size_t> nameTok = sub.parseDeclarator(mods);
      if (!nameTok || sub.pos_ != end) return;
      NodeId ident = b_.add(NodeKind::Identifier);
      b_.at(ident).span = toks_[*nameTok].span;
      b_.at(ident).typeText = mods.empty() ? base : base + " " + mods;
      b_.at(list).children.push_back(ident);
    } catch (const SyntaxFailure&) {
      b_.truncate(nodes);
    }
  }

  bool startsDeclaration() const {
    if (!has(0)) return false;
    const Token& t = tok();
    if (t.kind == TokenKind::Keyword) {
      return contains(kStorageOrQualifier, t.text) ||
             contains(kBaseType, t.text) || t.text == "struct" ||
             t.text == "union" || t.text == "enum" ||
             t.text == "__attribute__" || t.text == "_Atomic" ||
             t.text == "_Alignas" || t.text == "_Static_assert";
    }
    if (t.kind != TokenKind::Identifier) return false;
    if (isTypedefName(t.text)) {
      return isIdent(1) || isPunct(1, "*") || isPunct(1, "(");
    }
    if (isIdent(1)) return true;
    if (isPunct(1, "*")) {
      size_t j = 1;
      while (isPunct(j, "*")) ++j;
      while (has(j) && toks_[pos_ + j].kind == TokenKind::Keyword &&
             isQualifier(toks_[pos_ + j].text)) {
        ++j;
      }
      if (!isIdent(j)) return false;
      return isPunct(j + 1, ";") || isPunct(j + 1, "=") ||
             isPunct(j + 1, ",") || isPunct(j + 1, "[");
    }
    return false;
  }

  // --- statements ----------------------------------------------------------

  NodeId parseStatementInner() {
    const size_t first = pos_;
    const Token& t = tok();
    if (t.kind == TokenKind::Punct) {
      if (t.text == "{") return parseCompound();
      if (t.text == ";") {
        NodeId n = b_.add(NodeKind::ExprStmt);
        ++pos_;
        return close(n, first);
      }
    }
    if (t.kind == TokenKind::Keyword) {
      const std::string_view w = t.text;
      if (w == "if") return parseIf();
      if (w == "while") return parseWhile();
      if (w == "for") return parseFor();
      if (w == "do") return parseDoWhile();
      if (w == "switch") return parseSwitch();
      if (w == "case" || w == "default") return parseCase();
      if (w == "return") {
        NodeId n = b_.add(NodeKind::ReturnStmt);
        ++pos_;
        if (!isPunct(0, ";")) {
          NodeId e = parseDelimited(";");
          b_.at(n).children = {e};
        }
        expectPunct(";");
        return close(n, first);
      }
      if (w == "break" || w == "continue") {
        NodeId n = b_.add(w == "break" ? NodeKind::BreakStmt
                                       : NodeKind::ContinueStmt);
        ++pos_;
        expectPunct(";");
        return close(n, first);
      }
      if (w == "goto") {
        NodeId n = b_.add(NodeKind::GotoStmt);
        ++pos_;
        if (!isIdent(0)) fail();
        b_.at(n).name = std::string(tok().text);
        ++pos_;
        expectPunct(";");
        return close(n, first);
      }
    }
    if (t.kind == TokenKind::Identifier && isPunct(1, ":")) {
      NodeId n = b_.add(NodeKind::LabelStmt);
      b_.at(n).name = std::string(t.text);
      pos_ += 2;
      if (!isPunct(0, "}")) {
        NodeId s = parseStatement();
        b_.at(n).children = {s};
      }
      return close(n, first);
    }
    if (startsDeclaration()) return parseDeclaration();

    NodeId n = b_.add(NodeKind::ExprStmt);
    NodeId e = parseExpression();
    expectPunct(";");
    b_.at(n).children = {e};
    return close(n, first);
  }

  NodeId parseParenCond() {
    expectPunct("(");
    NodeId c = parseDelimited(")");
    expectPunct(")");
    return c;
  }

  NodeId parseIf() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::IfStmt);
    ++pos_;
    NodeId cond = parseParenCond();
    NodeId then = parseStatement();
    std::vector<NodeId> kids{cond, then};
    if (isKw(0, "else")) {
      ++pos_;
      kids.push_back(parseStatement());
    }
    b_.at(n).children = std::move(kids);
    return close(n, first);
  }

  NodeId parseWhile() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::WhileStmt);
    ++pos_;
    NodeId cond = parseParenCond();
    NodeId body = parseStatement();
    b_.at(n).children = {cond, body};
    return close(n, first);
  }

  NodeId parseDoWhile() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::DoWhileStmt);
    ++pos_;
    NodeId body = parseStatement();
    if (!isKw(0, "while")) fail();
    ++pos_;
    NodeId cond = parseParenCond();
    expectPunct(";");
    b_.at(n).children = {body, cond};
    return close(n, first);
  }

  NodeId parseSwitch() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::SwitchStmt);
    ++pos_;
    NodeId cond = parseParenCond();
    NodeId body = parseStatement();
    b_.at(n).children = {cond, body};
    return close(n, first);
  }

  NodeId parseCase() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::CaseLabel);
    std::vector<NodeId> kids;
    if (isKw(0, "case")) {
      b_.at(n).op = "case";
      b_.at(n).opSpan = tok().span;
      ++pos_;
      kids.push_back(parseConditional());
    } else {
      b_.at(n).op = "default";
      b_.at(n).opSpan = tok().span;
      ++pos_;
    }
    expectPunct(":");
    if (!isPunct(0, "}")) kids.push_back(parseStatement());
    b_.at(n).children = std::move(kids);
    return close(n, first);
  }

  NodeId parseFor() {
    const size_t first = pos_;
    NodeId n = b_.add(NodeKind::ForStmt);
    ++pos_;
    expectPunct("(");
    std::vector<NodeId> kids;
    uint8_t flags = 0;
    if (isPunct(0, ";")) {
      ++pos_;
    } else if (startsDeclaration()) {
      kids.push_back(parseDeclaration());
      flags |= kForHasInit;
    } else {
      kids.push_back(parseDelimited(";"));
      expectPunct(";");
      flags |= kForHasInit;
    }
    if (!isPunct(0, ";")) {
      kids.push_back(parseDelimited(";"));
      flags |= kForHasCond;
    }
    expectPunct(";");
    if (!isPunct(0, ")")) {
      kids.push_back(parseDelimited(")"));
      flags |= kForHasUpdate;
    }
    expectPunct(")");
    kids.push_back(parseStatement());
    b_.at(n).children = std::move(kids);
    b_.at(n).flags = flags;
    return close(n, first);
  }

  // Statement outside the supported subset: consume up to a `;` at depth 0 or
  // past a brace block, never past the enclosing block's closing brace.
  NodeId parseOpaqueStatement() {
    const size_t first = pos_;
    while (!atEnd()) {
      const Token& t = toks_[pos_];
      if (t.kind == TokenKind::Punct) {
        if (t.text == "(" || t.text == "[") {
          pos_ = match_[pos_] + 1;
          continue;
        }
        if (t.text == "{") {
          pos_ = match_[pos_] + 1;
          if (isPunct(0, ";")) {
            ++pos_;
            break;
          }
          if (isKw(0, "else") || isKw(0, "while") || isIdent(0)) continue;
          break;
        }
        if (t.text == ")" || t.text == "]" || t.text == "}") break;
        if (t.text == ";") {
          ++pos_;
          break;
        }
      }
      ++pos_;
    }
    if (pos_ == first) {
      throw ParseError(ErrorCode::UnbalancedDelimiters,
                       "unexpected closing delimiter at byte " +
                           std::to_string(toks_[first].span.begin));
    }
    NodeId n = b_.add(NodeKind::OpaqueStmt);
    return close(n, first);
  }

  AstBuilder& b_;
  const std::vector<Token>& toks_;
  const std::vector<size_t>& match_;
  size_t pos_;
  size_t hi_;
};

bool isOpener(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}
bool isCloser(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

// Matching bracket index for every bracket token; throws on imbalance.
std::vector<size_t> matchBrackets(const std::vector<Token>& toks) {
  std::vector<size_t> match(toks.size(), 0);
  std::vector<size_t> stack;
  for (size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (isOpener(t)) {
      stack.push_back(i);
    } else if (isCloser(t)) {
      const char want = t.text == ")" ? '(' : t.text == "]" ? '[' : '{';
      if (stack.empty() || toks[stack.back()].text[0] != want) {
        throw ParseError(ErrorCode::UnbalancedDelimiters,
                         "unbalanced '" + std::string(t.text) + "' at byte " +
                             std::to_string(t.span.begin));
      }
      match[i] = stack.back();
      match[stack.back()] = i;
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    throw ParseError(ErrorCode::UnbalancedDelimiters,
                     "unclosed '" + std::string(toks[stack.back()].text) +
                         "' at byte " +
                         std::to_string(toks[stack.back()].span.begin));
  }
  return match;
}

void collectPreambleTypedefs(const std::vector<Token>& toks, size_t end,
                             std::set<std::string, std::less<>>& out) {
  // `typedef ... name;` at depth 0: the identifier before the semicolon.
  int depth = 0;
  bool inTypedef = false;
  for (size_t i = 0; i < end; ++i) {
    const Token& t = toks[i];
    if (isOpener(t)) ++depth;
    if (isCloser(t)) --depth;
    if (depth != 0) continue;
    if (t.kind == TokenKind::Keyword && t.text == "typedef") inTypedef = true;
    if (inTypedef && t.kind == TokenKind::Punct && (t.text == ";" || t.text == ",")) {
      // Walk back past array/function suffixes to the declarator name.
      size_t j = i;
      while (j > 0) {
        --j;
        if (toks[j].kind == TokenKind::Identifier) {
          out.emplace(toks[j].text);
          break;
        }
        if (toks[j].kind == TokenKind::Punct &&
            (toks[j].text == "]" || toks[j].text == ")")) {
          continue;
        }
        if (toks[j].kind == TokenKind::Number) continue;
        if (toks[j].kind == TokenKind::Punct &&
            (toks[j].text == "[" || toks[j].text == "(" || toks[j].text == "*")) {
          continue;
        }
        break;
      }
      if (t.text == ";") inTypedef = false;
    }
  }
}

}  // namespace

Ast parse(std::string_view text) {
  LexResult lexed = lex(text);
  const std::vector<Token>& toks = lexed.tokens;
  // Directives are not part of the bracket structure.
  std::vector<Token> code;
  code.reserve(toks.size());
  for (const Token& t : toks) {
    if (t.kind != TokenKind::Directive) code.push_back(t);
  }
  std::vector<size_t> match = matchBrackets(code);

  // A function body is a depth-0 brace block that follows a parameter list.
  std::vector<size_t> bodies;
  int depth = 0;
  for (size_t i = 0; i < code.size(); ++i) {
    const Token& t = code[i];
    if (t.kind == TokenKind::Punct && t.text == "{" && depth == 0 && i > 0 &&
        code[i - 1].kind == TokenKind::Punct && code[i - 1].text == ")") {
      bodies.push_back(i);
    }
    if (isOpener(t)) ++depth;
    if (isCloser(t)) --depth;
  }
  if (bodies.empty()) {
    throw ParseError(ErrorCode::NotAFunction, "no function definition found");
  }
  if (bodies.size() > 1) {
    throw ParseError(ErrorCode::MultipleFunctions,
                     std::to_string(bodies.size()) + " function definitions found");
  }
  const size_t lbrace = bodies.front();
  const size_t rbrace = match[lbrace];
  const size_t rparen = lbrace - 1;
  const size_t lparen = match[rparen];
  if (lparen == 0 || code[lparen - 1].kind != TokenKind::Identifier) {
    throw ParseError(ErrorCode::NotAFunction, "brace block is not a function body");
  }
  const size_t nameTok = lparen - 1;
  size_t start = nameTok;
  while (start > 0) {
    const Token& prev = code[start - 1];
    if (prev.kind == TokenKind::Punct && (prev.text == ";" || prev.text == "}")) {
      break;
    }
    --start;
  }
  // Directive lines may not sit between the header start and the closing
  // brace; only the preamble and trailing lines may carry them.
  const uint32_t fnBegin = code[start].span.begin;
  const uint32_t fnEnd = code[rbrace].span.end;
  for (const Token& t : toks) {
    if (t.kind != TokenKind::Directive) continue;
    if (t.span.begin > fnBegin && t.span.begin < fnEnd) {
      throw ParseError(ErrorCode::DirectiveInBody,
                       "preprocessor directive inside function at byte " +
                           std::to_string(t.span.begin));
    }
  }
  if (rbrace + 1 != code.size()) {
    throw ParseError(ErrorCode::NotAFunction,
                     "unexpected tokens after the function definition");
  }

  AstBuilder b{std::string(text)};
  collectPreambleTypedefs(code, start, b.typedefs());

  NodeId root = b.add(NodeKind::FunctionDef);
  b.setRoot(root);
  const uint32_t headerBegin = code[start].span.begin;
  std::string_view ret = text.substr(headerBegin, code[nameTok].span.begin - headerBegin);
  while (!ret.empty() && (ret.back() == ' ' || ret.back() == '\t' ||
                          ret.back() == '\n' || ret.back() == '\r')) {
    ret.remove_suffix(1);
  }
  b.at(root).typeText = std::string(ret);
  b.at(root).name = std::string(code[nameTok].text);

  NodeId name = b.add(NodeKind::Identifier);
  b.at(name).span = code[nameTok].span;
  b.at(name).typeText = b.at(root).typeText;

  NodeId params = b.add(NodeKind::ParamList);
  b.at(params).span = Span{code[lparen].span.begin, code[rparen].span.end};

  Parser parser(b, code, match, lbrace, rbrace + 1);
  parser.parseParams(params, lparen, rparen);
  NodeId body;
  try {
    body = parser.parseCompound();
  } catch (const SyntaxFailure&) {
    throw ParseError(ErrorCode::NotAFunction, "function body did not parse");
  }
  b.at(root).children = {name, params, body};
  b.at(root).span = Span{headerBegin, code[rbrace].span.end};
  b.setComments(std::move(lexed.comments));
  b.setTokens(std::move(lexed.tokens));
  return std::move(b).finish();
}

Ast parseFragment(std::string_view text, FragmentKind kind,
                  const std::set<std::string, std::less<>>& typedefs) {
  LexResult lexed = lex(text);
  std::vector<Token> code;
  for (const Token& t : lexed.tokens) {
    if (t.kind == TokenKind::Directive) {
      throw ParseError(ErrorCode::DirectiveInBody, "directive in fragment");
    }
    code.push_back(t);
  }
  if (code.empty()) throw ParseError(ErrorCode::NotAFunction, "empty fragment");
  std::vector<size_t> match = matchBrackets(code);
  AstBuilder b{std::string(text)};
  b.typedefs() = typedefs;
  Parser parser(b, code, match, 0, code.size());
  NodeId root = kNoNode;
  try {
    root = kind == FragmentKind::Expression ? parser.parseExpression()
                                            : parser.parseStatement();
  } catch (const SyntaxFailure&) {
    throw ParseError(ErrorCode::NotAFunction, "fragment did not parse");
  }
  if (!parser.atEnd()) {
    throw ParseError(ErrorCode::NotAFunction, "trailing tokens after fragment");
  }
  b.setRoot(root);
  b.setComments(std::move(lexed.comments));
  b.setTokens(std::move(lexed.tokens));
  return std::move(b).finish();
}

}  // namespace natgvd
