#include "metrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <vector>

#include "cpg/cpg.hpp"
#include "parser/parser.hpp"

namespace natgvd {

size_t loc(std::string_view text) {
  size_t count = 0;
  bool content = false;
  for (char c : text) {
    if (c == '\n') {
      count += content ? 1 : 0;
      content = false;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      content = true;
    }
  }
  return count + (content ? 1 : 0);
}

double HalsteadCounts::volume() const {
  const size_t eta = vocabulary();
  return eta == 0 ? 0.0 : static_cast<double>(length()) * std::log2(static_cast<double>(eta));
}

namespace {

const std::set<std::string_view> kKeywordOperators = {
    "if", "else", "while", "for", "do", "switch", "case", "default",
    "return", "break", "continue", "goto"};

const std::set<std::string_view> kSeparators = {";", ",", "{", "}", "(", ")", "[", "]"};

class Census {
 public:
  explicit Census(const Ast& ast) : ast_(ast) {}

  HalsteadCounts run() {
    const Span fn = ast_.functionSpan();
    // Keywords come from the token stream so every statement form is covered
    // uniformly, opaque ones included.
    for (const Token& t : ast_.tokens()) {
      if (t.span.begin < fn.begin || t.span.end > fn.end) continue;
      if (t.kind == TokenKind::Keyword && kKeywordOperators.count(ast_.text(t.span))) {
        op(std::string(ast_.text(t.span)));
      }
    }
    for (const AstNode& n : ast_.nodes()) visit(n);
    HalsteadCounts c;
    c.totalOperators = nOps_;
    c.totalOperands = nOperands_;
    c.distinctOperators = ops_.size();
    c.distinctOperands = operands_.size();
    return c;
  }

 private:
  void op(const std::string& s) {
    ++nOps_;
    ops_.insert(s);
  }
  void operand(const std::string& s) {
    ++nOperands_;
    operands_.insert(s);
  }

  void visit(const AstNode& n) {
    switch (n.kind) {
      case NodeKind::BinaryExpr:
      case NodeKind::AssignExpr:
      case NodeKind::CompoundAssignExpr:
        op(n.op);
        break;
      case NodeKind::UnaryExpr:
        op((n.flags & kUnaryPostfix) ? "post" + n.op : n.op);
        break;
      case NodeKind::TernaryExpr: op("?:"); break;
      case NodeKind::CallExpr: op("()"); break;
      case NodeKind::IndexExpr: op("[]"); break;
      case NodeKind::MemberExpr:
        op(n.op);
        operand(n.name);
        break;
      case NodeKind::CastExpr: op("(cast)"); break;
      case NodeKind::Identifier:
      case NodeKind::Literal:
        operand(std::string(ast_.text(n.id)));
        break;
      case NodeKind::LabelStmt:
      case NodeKind::GotoStmt:
        operand(n.name);
        break;
      case NodeKind::OpaqueStmt:
        opaque(n);
        break;
      default:
        break;
    }
  }

  void opaque(const AstNode& n) {
    for (const Token& t : ast_.tokens()) {
      if (t.span.begin < n.span.begin || t.span.end > n.span.end) continue;
      const std::string text(ast_.text(t.span));
      switch (t.kind) {
        case TokenKind::Identifier:
        case TokenKind::Number:
        case TokenKind::String:
        case TokenKind::Char:
          operand(text);
          break;
        case TokenKind::Punct:
          if (!kSeparators.count(text)) op(text);
          break;
        default:
          break;
      }
    }
  }

  const Ast& ast_;
  size_t nOps_ = 0, nOperands_ = 0;
  std::set<std::string> ops_, operands_;
};

}  // namespace

HalsteadCounts halsteadCounts(const Ast& ast) { return Census(ast).run(); }

double halsteadVolume(const Ast& ast) { return halsteadCounts(ast).volume(); }

int cyclomatic(const Ast& ast) {
  int decisions = 0;
  for (const AstNode& n : ast.nodes()) {
    switch (n.kind) {
      case NodeKind::IfStmt:
      case NodeKind::WhileStmt:
      case NodeKind::ForStmt:
      case NodeKind::DoWhileStmt:
      case NodeKind::TernaryExpr:
        ++decisions;
        break;
      case NodeKind::CaseLabel:
        decisions += n.op == "case" ? 1 : 0;
        break;
      case NodeKind::BinaryExpr:
        decisions += (n.op == "&&" || n.op == "||") ? 1 : 0;
        break;
      case NodeKind::OpaqueStmt:
        for (const Token& t : ast.tokens()) {
          if (t.span.begin < n.span.begin || t.span.end > n.span.end) continue;
          const std::string_view s = ast.text(t.span);
          if (s == "if" || s == "while" || s == "for" || s == "case" || s == "?" ||
              s == "&&" || s == "||") {
            ++decisions;
          }
        }
        break;
      default:
        break;
    }
  }
  return 1 + decisions;
}

size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::optional<double> percentChange(double before, double after) {
  if (before == 0) return std::nullopt;
  return (after - before) / before * 100.0;
}

MetricsReport report(std::string_view reference, std::string_view variant) {
  const Ast ref = parse(reference);
  const Ast var = parse(variant);
  const double refDegree = buildCpg(ref).averageDegree();
  MetricsReport r;
  r.loc = loc(var.functionText());
  r.halsteadVolume = halsteadVolume(var);
  r.cyclomaticComplexity = cyclomatic(var);
  r.avgCpgDegree = buildCpg(var).averageDegree();
  r.editDistance = levenshtein(ref.functionText(), var.functionText());
  r.locDelta = percentChange(static_cast<double>(loc(ref.functionText())),
                             static_cast<double>(r.loc));
  r.volumeDelta = percentChange(halsteadVolume(ref), r.halsteadVolume);
  r.cyclomaticDelta = percentChange(cyclomatic(ref), r.cyclomaticComplexity);
  r.avgDegreeDelta = percentChange(refDegree, r.avgCpgDegree);
  return r;
}

}  // namespace natgvd
