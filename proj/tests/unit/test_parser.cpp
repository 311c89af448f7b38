#include <gtest/gtest.h>

#include "common/error.hpp"
#include "parser/parser.hpp"
#include "parser/rewrite.hpp"
#include "support/fixtures.hpp"
#include "support/fuzz.hpp"
#include "support/invariants.hpp"

namespace natgvd {
namespace {

ErrorCode parseErrorOf(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return ErrorCode::Internal;
}

std::vector<NodeKind> kindsOf(const Ast& ast) {
  std::vector<NodeKind> out;
  for (NodeId id : ast.subtree(ast.root())) out.push_back(ast.kind(id));
  return out;
}

TEST(Lexer, TokensAndComments) {
  const LexResult r = lex("a /* x */ += 0x1fU; // tail\n\"s\\\"\" 'c'");
  ASSERT_EQ(r.tokens.size(), 6u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::Identifier);
  EXPECT_EQ(r.tokens[1].text, "+=");
  EXPECT_EQ(r.tokens[2].kind, TokenKind::Number);
  EXPECT_EQ(r.tokens[2].text, "0x1fU");
  EXPECT_EQ(r.tokens[4].kind, TokenKind::String);
  EXPECT_EQ(r.tokens[5].kind, TokenKind::Char);
  EXPECT_EQ(r.comments.size(), 2u);
}

TEST(Lexer, DirectiveSpansContinuationLines) {
  const LexResult r = lex("#define M(x) \\\n  (x + 1)\nint y;");
  ASSERT_FALSE(r.tokens.empty());
  EXPECT_EQ(r.tokens[0].kind, TokenKind::Directive);
  EXPECT_EQ(r.tokens[1].text, "int");
}

TEST(Lexer, UnterminatedCommentIsUnbalanced) {
  EXPECT_THROW(lex("int f() { /* open"), ParseError);
}

TEST(Parser, SimpleFunctionStructure) {
  const Ast ast = parse("int f(int a) { return a + 1; }");
  EXPECT_EQ(ast.kind(ast.root()), NodeKind::FunctionDef);
  EXPECT_EQ(ast.node(ast.root()).name, "f");
  const std::vector<NodeKind> expected = {
      NodeKind::FunctionDef, NodeKind::Identifier, NodeKind::ParamList,  NodeKind::Identifier,
      NodeKind::CompoundStmt, NodeKind::ReturnStmt, NodeKind::BinaryExpr,
      NodeKind::Identifier,  NodeKind::Literal};
  EXPECT_EQ(kindsOf(ast), expected);
}

TEST(Parser, PreambleIsKept) {
  const std::string text = "#include <stdio.h>\ntypedef int T;\nT g(T x) { return x; }\n";
  const Ast ast = parse(text);
  EXPECT_EQ(ast.text(ast.preamble()), "#include <stdio.h>\ntypedef int T;\n");
  EXPECT_EQ(ast.functionText(), "T g(T x) { return x; }");
  EXPECT_TRUE(ast.typedefNames().count("T"));
}

TEST(Parser, ForClausesTrackPresence) {
  const Ast ast = parse("void f(int n) { for (;n;) n--; }");
  NodeId loop = kNoNode;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind == NodeKind::ForStmt) loop = n.id;
  }
  ASSERT_NE(loop, kNoNode);
  const ForClauses c = ast.forClauses(loop);
  EXPECT_EQ(c.init, kNoNode);
  EXPECT_NE(c.cond, kNoNode);
  EXPECT_EQ(c.update, kNoNode);
  EXPECT_NE(c.body, kNoNode);
}

TEST(Parser, PostfixFlagged) {
  const Ast ast = parse("void f(int i) { i++; --i; }");
  int postfix = 0, prefix = 0;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind != NodeKind::UnaryExpr) continue;
    (n.flags & kUnaryPostfix ? postfix : prefix)++;
  }
  EXPECT_EQ(postfix, 1);
  EXPECT_EQ(prefix, 1);
}

TEST(Parser, CastVersusParenthesizedExpression) {
  const Ast cast = parse("typedef long L;\nint f(int x) { return (L)x; }");
  const Ast paren = parse("int f(int x, int L) { return (L)+x; }");
  auto has = [](const Ast& ast, NodeKind k) {
    for (const AstNode& n : ast.nodes()) {
      if (n.kind == k) return true;
    }
    return false;
  };
  EXPECT_TRUE(has(cast, NodeKind::CastExpr));
  EXPECT_FALSE(has(paren, NodeKind::CastExpr));
  EXPECT_TRUE(has(paren, NodeKind::ParenExpr));
}

TEST(Parser, UnsupportedStatementBecomesOpaque) {
  const Ast ast = parse("int f(int x) { __asm__(\"nop\"); return x; }");
  bool opaque = false;
  for (const AstNode& n : ast.nodes()) opaque |= n.kind == NodeKind::OpaqueStmt;
  EXPECT_TRUE(opaque);
  EXPECT_FALSE(testing::spanViolation(ast));
}

TEST(Parser, RejectsMalformedUnits) {
  EXPECT_EQ(parseErrorOf("int f() { return 0;"), ErrorCode::UnbalancedDelimiters);
  EXPECT_EQ(parseErrorOf("int f() { return (0; }"), ErrorCode::UnbalancedDelimiters);
  EXPECT_EQ(parseErrorOf("int f() { return 0; }\nint g() { return 1; }"),
            ErrorCode::MultipleFunctions);
  EXPECT_EQ(parseErrorOf("int f() {\n#ifdef X\n  return 1;\n#endif\n  return 0;\n}"),
            ErrorCode::DirectiveInBody);
  EXPECT_EQ(parseErrorOf("int x = 3;"), ErrorCode::NotAFunction);
  EXPECT_EQ(parseErrorOf(""), ErrorCode::NotAFunction);
}

TEST(Parser, FragmentsMatchSubtrees) {
  const Ast ast = parse("int f(int a, int *p) { if (a > 0) p[a] += (a * 2); return a ? *p : -a; }");
  EXPECT_FALSE(testing::spanViolation(ast));
  EXPECT_FALSE(testing::reconstructionViolation(ast));
}

TEST(Parser, FixtureCorpusInvariants) {
  for (const testing::Fixture& f : testing::allFixtures()) {
    SCOPED_TRACE(f.name);
    const Ast ast = parse(f.text);
    EXPECT_EQ(ast.source(), f.text);
    EXPECT_EQ(rewrite(f.text, {}), f.text);
    EXPECT_FALSE(testing::spanViolation(ast)) << *testing::spanViolation(ast);
    const auto bad = testing::reconstructionViolation(ast);
    EXPECT_FALSE(bad) << *bad;
  }
}

TEST(Parser, FuzzedFunctionsRoundTripAndReconstruct) {
  testing::FunctionFuzzer fuzz(7);
  for (int k = 0; k < 1000; ++k) {
    const std::string text = fuzz.next();
    SCOPED_TRACE(text);
    const Ast ast = parse(text);
    EXPECT_EQ(rewrite(text, {}), text);
    EXPECT_EQ(shapeOf(parse(rewrite(text, {})), ast.root()), shapeOf(ast, ast.root()));
    const auto spans = testing::spanViolation(ast);
    ASSERT_FALSE(spans) << *spans;
    const auto bad = testing::reconstructionViolation(ast);
    ASSERT_FALSE(bad) << *bad;
  }
}

TEST(Rewrite, AppliesEditsInAnyOrder) {
  const std::string text = "abcdef";
  EXPECT_EQ(rewrite(text, {{{4, 5}, "E"}, {{0, 1}, "A"}}), "AbcdEf");
  EXPECT_EQ(rewrite(text, {{{2, 2}, "x"}, {{2, 2}, "y"}}), "abxycdef");
  EXPECT_EQ(rewrite(text, {{{1, 3}, ""}}), "adef");
}

TEST(Rewrite, RejectsOverlapAndOutOfBounds) {
  try {
    rewrite("abcdef", {{{0, 3}, "x"}, {{2, 4}, "y"}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverlappingEdits);
  }
  try {
    rewrite("abc", {{{2, 9}, "x"}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpanOutOfBounds);
  }
}

TEST(Rewrite, MapOffsetThroughEdits) {
  const std::vector<Edit> edits = {{{2, 2}, "xyz"}, {{5, 7}, ""}};
  EXPECT_EQ(mapOffset(1, edits), 1u);
  EXPECT_EQ(mapOffset(2, edits), 2u);  // insertion exactly here does not move it
  EXPECT_EQ(mapOffset(3, edits), 6u);
  EXPECT_EQ(mapOffset(8, edits), 9u);
}

}  // namespace
}  // namespace natgvd
