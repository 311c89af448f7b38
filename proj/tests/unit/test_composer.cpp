#include <gtest/gtest.h>

#include <set>

#include "common/error.hpp"
#include "composer/composer.hpp"
#include "support/fixtures.hpp"
#include "support/goldens.hpp"

namespace natgvd {
namespace {

SourceUnit unit(std::string_view text) { return SourceUnit{"u", std::string(text), Label::Unknown}; }

GenerationConfig only(TransformRule r) {
  GenerationConfig c;
  c.enabledRules = {r};
  return c;
}

// Rewrites every identifier `x` to `x + 0`. The output holds a fresh `x` at
// the same offset, so only the frontier stops it from applying forever.
RuleEngine sameOffsetRetrigger() {
  RuleEngine e;
  e.candidates = [](const Ast& ast) {
    std::vector<Site> out;
    for (const AstNode& n : ast.nodes()) {
      if (n.kind == NodeKind::Identifier && ast.text(n.id) == "x" &&
          ast.kind(ast.parent(n.id)) != NodeKind::DeclStmt &&
          ast.kind(ast.parent(n.id)) != NodeKind::ParamList) {
        out.push_back(Site{n.id, TransformRule::CondReorder, n.span.begin});
      }
    }
    return out;
  };
  e.valid = [](const Ast&, const Site&) { return true; };
  e.apply = [](const Ast& ast, const Site& s) {
    return RewritePlan{{Edit{ast.node(s.nodeId).span, "x + 0"}}, "x -> x + 0", false};
  };
  return e;
}

TEST(Composer, SingleEmitsOneVariantPerSite) {
  const auto vs = generateSingle(unit(testing::kThreeSiteReorder), only(TransformRule::CondReorder));
  ASSERT_EQ(vs.size(), 3u);
  std::set<uint32_t> ordinals;
  for (const Variant& v : vs) {
    ASSERT_EQ(v.depth(), 1u);
    EXPECT_EQ(v.provenance[0].rule, TransformRule::CondReorder);
    ordinals.insert(v.provenance[0].ordinal);
    EXPECT_EQ(v.parentId, "u");
  }
  EXPECT_EQ(ordinals.size(), 3u);
}

TEST(Composer, MultiLocationSaturates) {
  const auto v = generateMultiLocation(unit(testing::kThreeSiteReorder), TransformRule::CondReorder);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->text, testing::kThreeSiteReorderSaturated);
  ASSERT_EQ(v->provenance.size(), 3u);
  EXPECT_LT(v->provenance[0].ordinal, v->provenance[1].ordinal);
  EXPECT_LT(v->provenance[1].ordinal, v->provenance[2].ordinal);
}

TEST(Composer, MultiLocationNeedsTwoSites) {
  EXPECT_FALSE(generateMultiLocation(unit("int f(int a) { if (a < 1) return 1; return 0; }"),
                                     TransformRule::CondReorder));
  EXPECT_FALSE(generateMultiLocation(unit("int f(int a) { return a; }"), TransformRule::CondReorder));
}

TEST(Composer, SaturationTerminatesOnSelfRetrigger) {
  const SourceUnit u = unit("int f(int x) {\n  int y = x * 2;\n  y += x;\n  return y - x;\n}\n");
  const auto v = saturate(u, TransformRule::CondReorder, sameOffsetRetrigger());
  ASSERT_TRUE(v);
  EXPECT_EQ(v->text,
            "int f(int x) {\n  int y = x + 0 * 2;\n  y += x + 0;\n  return y - x + 0;\n}\n");
  ASSERT_EQ(v->provenance.size(), 3u);
  for (size_t k = 1; k < v->provenance.size(); ++k) {
    EXPECT_LT(v->provenance[k - 1].ordinal, v->provenance[k].ordinal);
  }
}

TEST(Composer, ForwardRetriggerHitsTheCap) {
  // `x` -> `(x)` puts a new site just past the frontier every time.
  RuleEngine e = sameOffsetRetrigger();
  e.apply = [](const Ast& ast, const Site& s) {
    return RewritePlan{{Edit{ast.node(s.nodeId).span, "(x)"}}, "wrap", false};
  };
  try {
    saturate(unit("int f(int x) { return x; }"), TransformRule::CondReorder, e, 2, 25);
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Composer, MultiRuleDepthDedupeAndReplay) {
  for (const testing::Fixture& f : testing::loadFixtures("driver")) {
    SCOPED_TRACE(f.name);
    GenerationConfig c;
    c.maxDepth = 3;
    const auto vs = generateMultiRule(unit(f.text), c);
    std::set<std::string> texts;
    for (const Variant& v : vs) {
      EXPECT_GE(v.depth(), 2u);
      EXPECT_LE(v.depth(), 3u);
      EXPECT_NE(v.text, f.text);
      EXPECT_TRUE(texts.insert(v.text).second) << "duplicate variant";
      EXPECT_EQ(replay(f.text, v.provenance), v.text);
    }
  }
}

TEST(Composer, MultiRuleBudget) {
  GenerationConfig c;
  c.maxDepth = 4;
  c.budget = 5;
  const std::string text = testing::loadFixtures("driver").front().text;
  try {
    generateMultiRule(unit(text), c);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Composer, GenerateAllIsDedupedUnion) {
  const SourceUnit u = unit(testing::kThreeSiteReorder);
  GenerationConfig c = only(TransformRule::CondReorder);
  c.modes = {true, true, true};
  GenerationStats stats;
  const auto all = generateAll(u, c, &stats);
  // Three single mirrors, the saturated triple, and the three pairs at
  // depth 2 (mirroring a site back yields the original and is dropped).
  std::set<std::string> texts;
  for (const Variant& v : all) EXPECT_TRUE(texts.insert(v.text).second);
  EXPECT_TRUE(texts.count(std::string(testing::kThreeSiteReorderSaturated)));
  EXPECT_EQ(stats.variants, all.size());
  EXPECT_EQ(all.size(), 3u + 1u + 3u);

  c.enabledRules.clear();
  EXPECT_TRUE(generateAll(u, c).empty());
}

TEST(Composer, ReplayDetectsMissingSite) {
  const std::vector<Step> steps = {{TransformRule::CondReorder, 999, "", false}};
  try {
    replay(testing::kThreeSiteReorder, steps);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReplayMismatch);
  }
}

TEST(Composer, SingleOrderIsRuleThenOrdinal) {
  const std::string text = "void f(int a, int b) {\n  if (a < b) g(); else h();\n  a += b;\n}\n";
  const auto vs = generateSingle(unit(text), GenerationConfig{});
  ASSERT_EQ(vs.size(), 3u);
  EXPECT_EQ(vs[0].provenance[0].rule, TransformRule::CompoundAssignSplit);
  EXPECT_EQ(vs[1].provenance[0].rule, TransformRule::CondNegate);
  EXPECT_EQ(vs[2].provenance[0].rule, TransformRule::CondReorder);
}

}  // namespace
}  // namespace natgvd
