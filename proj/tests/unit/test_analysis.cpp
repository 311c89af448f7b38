#include <gtest/gtest.h>

#include "analysis/analysis.hpp"
#include "analysis/ctypes.hpp"
#include "parser/parser.hpp"

namespace natgvd {
namespace {

// Name of the first failing predicate at the rule's first candidate, or
// "ok" when the site is valid, or "none" without candidates.
std::string verdict(std::string_view text, TransformRule rule) {
  const Ast ast = parse(text);
  const std::vector<Site> sites = candidateNodes(ast, rule);
  if (sites.empty()) return "none";
  const auto failed = failedPredicate(ast, sites.front());
  EXPECT_EQ(constraintsValid(ast, sites.front()), !failed);
  return failed ? std::string(*failed) : "ok";
}

TEST(CTypes, ParsesIntegerTypeText) {
  EXPECT_EQ(parseIntegerType("int"), IntType::Int);
  EXPECT_EQ(parseIntegerType("const unsigned long int"), IntType::ULong);
  EXPECT_EQ(parseIntegerType("static long long"), IntType::LLong);
  EXPECT_EQ(parseIntegerType("unsigned"), IntType::UInt);
  EXPECT_EQ(parseIntegerType("signed char"), IntType::SChar);
  EXPECT_FALSE(parseIntegerType("double"));
  EXPECT_FALSE(parseIntegerType("size_t"));
  EXPECT_FALSE(parseIntegerType("int *"));
  EXPECT_FALSE(parseIntegerType("short long"));
}

TEST(CTypes, UsualArithmeticConversions) {
  EXPECT_EQ(commonType(IntType::Char, IntType::Short), IntType::Int);
  EXPECT_EQ(commonType(IntType::Int, IntType::UInt), IntType::UInt);
  EXPECT_EQ(commonType(IntType::Long, IntType::UInt), IntType::Long);
  EXPECT_EQ(commonType(IntType::Long, IntType::ULong), IntType::ULong);
    // Same width on LP64, so the signed type cannot hold every value.
  EXPECT_EQ(commonType(IntType::LLong, IntType::ULong), IntType::ULLong);
}

TEST(CTypes, IntegerLiteralTypes) {
  EXPECT_EQ(integerLiteralType("1"), IntType::Int);
  EXPECT_EQ(integerLiteralType("2147483648"), IntType::Long);
  EXPECT_EQ(integerLiteralType("0x80000000"), IntType::UInt);
  EXPECT_EQ(integerLiteralType("10ul"), IntType::ULong);
  EXPECT_EQ(integerLiteralType("'a'"), IntType::Int);
  EXPECT_FALSE(integerLiteralType("1.5"));
  EXPECT_FALSE(integerLiteralType("1e3"));
  EXPECT_FALSE(integerLiteralType("09"));
}

TEST(Analysis, DeclaredIntegerType) {
  const Ast ast = parse("int f(unsigned u, double d, int *p) { static const short s = 1; return s; }");
  EXPECT_EQ(declaredIntegerType(ast, "u"), "unsigned");
  EXPECT_EQ(declaredIntegerType(ast, "s"), "const short");
  EXPECT_FALSE(declaredIntegerType(ast, "d"));
  EXPECT_FALSE(declaredIntegerType(ast, "p"));
  EXPECT_FALSE(declaredIntegerType(ast, "missing"));
}

TEST(Analysis, SideEffects) {
  const Ast ast = parse("int f(int a, int *p) { return a + p[a] * (a - 1); }");
  const Ast call = parse("int f(int a) { return a + g(a); }");
  const Ast inc = parse("int f(int a) { return a + a++; }");
  auto retExpr = [](const Ast& t) {
    for (const AstNode& n : t.nodes()) {
      if (n.kind == NodeKind::ReturnStmt) return n.children.front();
    }
    return kNoNode;
  };
  EXPECT_FALSE(hasSideEffects(ast, retExpr(ast)));
  EXPECT_TRUE(hasSideEffects(call, retExpr(call)));
  EXPECT_TRUE(hasSideEffects(inc, retExpr(inc)));
}

TEST(Analysis, CandidatesSortedByOrdinal) {
  const Ast ast = parse("int f(int a, int b) { if (a < b) a = 1; if (b == 2) b = a; return a > b; }");
  const std::vector<Site> sites = candidateNodes(ast, TransformRule::CondReorder);
  ASSERT_EQ(sites.size(), 2u);  // the return comparison is not an if condition
  EXPECT_LT(sites[0].ordinal, sites[1].ordinal);
  EXPECT_EQ(ast.text(sites[0].nodeId), "a < b");
  EXPECT_EQ(sites[0].ordinal, ast.node(sites[0].nodeId).span.begin);
}

TEST(Analysis, AssignSplitPredicates) {
  using R = TransformRule;
  EXPECT_EQ(verdict("void f(int x, int a, int b) { x = a + b * 2; }", R::AssignSplit), "ok");
  EXPECT_EQ(verdict("void f(int x, int a) { x = a + 1; }", R::AssignSplit),
            "at-least-two-binary-operators");
  EXPECT_EQ(verdict("void f(int x, int a) { if (a) x = a + a * a; }", R::AssignSplit),
            "statement-in-block");
  EXPECT_EQ(verdict("void f(double x, int a) { x = a + a * a; }", R::AssignSplit),
            "integer-typed-lhs");
  EXPECT_EQ(verdict("void f(int x, int *p) { x = p[0] + p[1] * 2; }", R::AssignSplit),
            "identifier-or-integer-operands");
  EXPECT_EQ(verdict("void f(int x, int a) { x = a && a + a; }", R::AssignSplit),
            "identifier-or-integer-operands");
  EXPECT_EQ(verdict("void f(int x, double d) { x = d + d * 2; }", R::AssignSplit),
            "integer-typed-operands");
}

TEST(Analysis, CompoundAssignPredicates) {
  using R = TransformRule;
  EXPECT_EQ(verdict("void f(int x) { x += 2; }", R::CompoundAssignSplit), "ok");
  EXPECT_EQ(verdict("void f(int *p) { *p += 2; }", R::CompoundAssignSplit),
            "identifier-member-or-index-lvalue");
  EXPECT_EQ(verdict("void f(int *p, int i) { p[i++] += 2; }", R::CompoundAssignSplit),
            "side-effect-free-lvalue");
  EXPECT_EQ(verdict("void f(int *p, int i) { p[g(i)] -= 2; }", R::CompoundAssignSplit),
            "side-effect-free-lvalue");
}

TEST(Analysis, LoopPredicates) {
  using R = TransformRule;
  EXPECT_EQ(verdict("void f(int i) { for (i = 0; i < 3; i++) g(i); }", R::ForToWhile), "ok");
  EXPECT_EQ(verdict("void f(int i) { for (i = 0; i < 3; i++) { if (i) continue; g(i); } }",
                    R::ForToWhile),
            "no-continue-for-this-loop");
  // A continue that belongs to an inner loop does not count.
  EXPECT_EQ(verdict("void f(int i, int j) { for (i = 0; i < 3; i++) { while (j) { continue; } } }",
                    R::ForToWhile),
            "ok");
  EXPECT_EQ(verdict("void f(int i) { for (i = 0; i < 3; i++) { int i = 9; g(i); } }",
                    R::ForToWhile),
            "update-not-shadowed-in-body");
  EXPECT_EQ(verdict("void f(int i) { while (i) i--; }", R::WhileToFor), "ok");
  EXPECT_EQ(verdict("void f(int i) { do i--; while (i); }", R::WhileToFor), "none");
}

TEST(Analysis, ConditionalPredicates) {
  using R = TransformRule;
  EXPECT_EQ(verdict("void f(int a) { if (a) g(); }", R::CondNegate), "has-else-branch");
  EXPECT_EQ(verdict("void f(int a) { if (a) g(); else h(); }", R::CondNegate), "ok");
  EXPECT_EQ(verdict("void f(int a) { if (a) { L: g(); } else h(); }", R::CondNegate),
            "branches-free-of-labels");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a || b) g(); }", R::CondSplitAnd), "none");
  // A parenthesised conjunction is not a top-level one.
  EXPECT_EQ(verdict("void f(int a, int b) { if ((a && b)) g(); }", R::CondSplitAnd), "none");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a && b) { L: g(); } else h(); }",
                    R::CondSplitAnd),
            "labels-not-duplicated");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a && b) { L: g(); } }", R::CondSplitAnd), "ok");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a && b) g(); else { static int n; n++; } }",
                    R::CondSplitAnd),
            "no-static-in-duplicated-else");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a || b) { L: g(); } }", R::CondSplitOr),
            "then-branch-free-of-labels");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a < b++) g(); }", R::CondReorder),
            "side-effect-free-operands");
  EXPECT_EQ(verdict("void f(int a, int b) { if (a < b) g(); }", R::CondReorder), "ok");
}

TEST(Analysis, ExpressionHelpers) {
  EXPECT_EQ(mirroredOp("<"), ">");
  EXPECT_EQ(mirroredOp(">="), "<=");
  EXPECT_EQ(mirroredOp("=="), "==");
  EXPECT_EQ(negatedOp("<"), ">=");
  EXPECT_EQ(negatedOp("=="), "!=");
  EXPECT_TRUE(isComparisonOp("!="));
  EXPECT_FALSE(isComparisonOp("&&"));

  const Ast ast = parse("int f(int tmp_0, int tmp_2) { int x; x = (1 + 2) * (3 + 4 * 5); return x; }");
  EXPECT_EQ(freshTempName(ast), "tmp_1");
  NodeId assign = kNoNode;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind == NodeKind::AssignExpr) assign = n.id;
  }
  ASSERT_NE(assign, kNoNode);
  EXPECT_EQ(ast.text(deepestBinary(ast, ast.node(assign).children[1])), "4 * 5");
}

TEST(Analysis, ConstraintCatalogIsComplete) {
  for (TransformRule r : kAllRules) {
    const ConstraintSet& cs = constraintSet(r);
    EXPECT_EQ(cs.rule, r);
    EXPECT_FALSE(cs.predicates.empty()) << ruleName(r);
    EXPECT_EQ(parseRule(ruleName(r)), r);
    EXPECT_EQ(parseRule(ruleFlagName(r)), r);
  }
  EXPECT_FALSE(parseRule("no-such-rule"));
}

}  // namespace
}  // namespace natgvd
