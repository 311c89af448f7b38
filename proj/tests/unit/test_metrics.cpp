#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "metrics/metrics.hpp"
#include "metrics/rename_baseline.hpp"
#include "parser/parser.hpp"
#include "support/fixtures.hpp"
#include "support/micro_programs.hpp"
#include "support/oracles.hpp"

namespace natgvd {
namespace {

TEST(Metrics, HalsteadMicroPrograms) {
  for (const testing::MicroProgram& p : testing::microPrograms()) {
    SCOPED_TRACE(p.text);
    const HalsteadCounts h = halsteadCounts(parse(p.text));
    EXPECT_EQ(h.totalOperators, p.n1);
    EXPECT_EQ(h.totalOperands, p.n2);
    EXPECT_EQ(h.distinctOperators, p.eta1);
    EXPECT_EQ(h.distinctOperands, p.eta2);
    const double n = static_cast<double>(p.n1 + p.n2);
    const double eta = static_cast<double>(p.eta1 + p.eta2);
    EXPECT_NEAR(halsteadVolume(parse(p.text)), n * std::log2(eta), 1e-9);
  }
}

TEST(Metrics, CyclomaticMicroPrograms) {
  for (const testing::MicroProgram& p : testing::microPrograms()) {
    EXPECT_EQ(cyclomatic(parse(p.text)), p.cyclomatic) << p.text;
  }
  EXPECT_EQ(cyclomatic(parse("void f(int a, int b) { if (a && b) g(); }")), 3);
  // case labels count, default does not
  EXPECT_EQ(cyclomatic(parse("int f(int k) { switch (k) { case 1: case 2: return 1; default: return 0; } }")),
            3);
  EXPECT_EQ(cyclomatic(parse("int f(int k) { do k--; while (k > 0 || k < -9); return k; }")), 3);
}

TEST(Metrics, PrefixAndPostfixAreDistinctOperators) {
  const HalsteadCounts h = halsteadCounts(parse("void f(int i) { i++; ++i; }"));
  EXPECT_EQ(h.totalOperators, 2u);
  EXPECT_EQ(h.distinctOperators, 2u);
}

TEST(Metrics, EmptyVocabularyHasZeroVolume) {
  HalsteadCounts h;
  EXPECT_EQ(h.volume(), 0.0);
}

TEST(Metrics, Loc) {
  EXPECT_EQ(loc(""), 0u);
  EXPECT_EQ(loc("a\n\n  \n\tb\n"), 2u);
  EXPECT_EQ(loc("x"), 1u);
}

TEST(Metrics, LevenshteinKnownValues) {
  EXPECT_EQ(levenshtein("", ""), 0u);
  EXPECT_EQ(levenshtein("abc", ""), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("flaw", "lawn"), 2u);
  EXPECT_EQ(levenshtein("err >= 0", "0 <= err"), 7u);
}

TEST(Metrics, LevenshteinAxiomsOnRandomPairs) {
  std::mt19937_64 rng(42);
  auto randomString = [&]() {
    const size_t len = std::uniform_int_distribution<size_t>(0, 40)(rng);
    std::string s;
    for (size_t i = 0; i < len; ++i) s += "abcd ;()"[rng() % 8];
    return s;
  };
  for (int k = 0; k < 1000; ++k) {
    const std::string a = randomString(), b = randomString(), c = randomString();
    const size_t ab = levenshtein(a, b);
    EXPECT_EQ(ab, testing::referenceLevenshtein(a, b));
    EXPECT_EQ(levenshtein(a, a), 0u);
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_LE(ab, levenshtein(a, c) + levenshtein(c, b));
    EXPECT_GE(ab, a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
    EXPECT_LE(ab, std::max(a.size(), b.size()));
  }
}

TEST(Metrics, PercentChange) {
  EXPECT_DOUBLE_EQ(*percentChange(4, 5), 25.0);
  EXPECT_DOUBLE_EQ(*percentChange(4, 3), -25.0);
  EXPECT_FALSE(percentChange(0, 3));
}

TEST(Metrics, ReportAgainstReference) {
  const std::string ref = "int f(int a) {\n  if (a < 0) return 0;\n  return a;\n}\n";
  const std::string var = "int f(int a) {\n  if (0 > a) return 0;\n  return a;\n}\n";
  const MetricsReport r = report(ref, var);
  EXPECT_EQ(r.loc, 4u);
  EXPECT_EQ(r.editDistance, levenshtein("if (a < 0)", "if (0 > a)"));
  EXPECT_EQ(r.cyclomaticComplexity, 2);
  ASSERT_TRUE(r.volumeDelta);
  EXPECT_DOUBLE_EQ(*r.volumeDelta, 0.0);
  EXPECT_DOUBLE_EQ(*r.locDelta, 0.0);
}

TEST(RenameBaseline, RenamesLocalsOnly) {
  const std::string text =
      "struct S { int len; };\n"
      "int f(struct S *s, int v_0) {\n"
      "  int len = s->len;\n"
      "  if (len > v_0) goto len;\n"
      "  len = 0;\n"
      "len:\n"
      "  return g(len);\n"
      "}\n";
  EXPECT_EQ(renameBaseline(text),
            "struct S { int len; };\n"
            "int f(struct S *v_1, int v_2) {\n"
            "  int v_3 = v_1->len;\n"
            "  if (v_3 > v_2) goto len;\n"
            "  v_3 = 0;\n"
            "len:\n"
            "  return g(v_3);\n"
            "}\n");
}

TEST(RenameBaseline, StructuralMetricsUnchangedOnFixtures) {
  for (const testing::Fixture& f : testing::allFixtures()) {
    SCOPED_TRACE(f.name);
    const std::string renamed = renameBaseline(f.text);
    const MetricsReport r = report(f.text, renamed);
    ASSERT_TRUE(r.volumeDelta && r.cyclomaticDelta && r.avgDegreeDelta);
    EXPECT_EQ(*r.volumeDelta, 0.0);
    EXPECT_EQ(*r.cyclomaticDelta, 0.0);
    EXPECT_EQ(*r.avgDegreeDelta, 0.0);
  }
}

}  // namespace
}  // namespace natgvd
