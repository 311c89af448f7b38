#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "common/error.hpp"
#include "cpg/cpg.hpp"
#include "parser/parser.hpp"
#include "support/fixtures.hpp"
#include "support/fuzz.hpp"
#include "support/goldens.hpp"
#include "support/oracles.hpp"

namespace natgvd {
namespace {

using Triple = std::tuple<std::string, std::string, std::string>;

// Control statements are named by kind, everything else by its text.
std::string label(const Ast& ast, const Cpg& g, int id) {
  if (id == g.entry()) return "Entry";
  if (id == g.exit()) return "Exit";
  switch (ast.kind(id)) {
    case NodeKind::IfStmt: return "if";
    case NodeKind::WhileStmt: return "while";
    case NodeKind::ForStmt: return "for";
    case NodeKind::DoWhileStmt: return "do";
    case NodeKind::SwitchStmt: return "switch";
    case NodeKind::CaseLabel: {
      const std::string_view t = ast.text(id);
      return std::string(t.substr(0, t.find(':') + 1));
    }
    default: return std::string(ast.text(id));
  }
}

std::set<Triple> duc(const Ast& ast, const Cpg& g) {
  std::set<Triple> out;
  for (const CpgEdge& e : g.edges()) {
    if (e.kind == EdgeKind::Duc) out.emplace(label(ast, g, e.src), label(ast, g, e.dst), e.var);
  }
  return out;
}

std::set<std::pair<std::string, std::string>> cfg(const Ast& ast, const Cpg& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const CpgEdge& e : g.edges()) {
    if (e.kind == EdgeKind::Cfg) out.emplace(label(ast, g, e.src), label(ast, g, e.dst));
  }
  return out;
}

TEST(Cpg, MinimalDefUse) {
  const Ast ast = parse("int f(){int x=1; return x;}");
  const Cpg g = buildCpg(ast);
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"int x=1;", "return x;", "x"}}));
}

TEST(Cpg, NodeAndEdgeBookkeeping) {
  const Ast ast = parse("int f(int a){int r; if (a) r = 1; else r = 2; return r;}");
  const Cpg g = buildCpg(ast);
  EXPECT_EQ(g.nodes().size(), ast.size() + 2);
  EXPECT_EQ(g.astNodeCount(), ast.size());
  EXPECT_EQ(g.nodes()[static_cast<size_t>(g.entry())].kind, "Entry");
  EXPECT_EQ(g.nodes()[static_cast<size_t>(g.exit())].kind, "Exit");
  EXPECT_EQ(g.edgeCount(EdgeKind::Ast), ast.size() - 1);
  EXPECT_EQ(cfg(ast, g), (std::set<std::pair<std::string, std::string>>{
                             {"Entry", "int r;"},
                             {"int r;", "if"},
                             {"if", "r = 1;"},
                             {"if", "r = 2;"},
                             {"r = 1;", "return r;"},
                             {"r = 2;", "return r;"},
                             {"return r;", "Exit"}}));
  EXPECT_EQ(g.cfgNodeCount(), 5u + 2u);
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"r = 1;", "return r;", "r"},
                                           {"r = 2;", "return r;", "r"}}));
  const double expected = 2.0 * static_cast<double>(g.edges().size()) /
                          static_cast<double>(g.nodes().size());
  EXPECT_DOUBLE_EQ(g.averageDegree(), expected);
}

TEST(Cpg, LoopCarriedDefinitions) {
  const Ast ast =
      parse("int f(int n) {\n  int s = 0;\n  while (n) {\n    s += n;\n    n--;\n  }\n  return s;\n}\n");
  const Cpg g = buildCpg(ast);
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"int s = 0;", "s += n;", "s"},
                                           {"int s = 0;", "return s;", "s"},
                                           {"s += n;", "s += n;", "s"},
                                           {"s += n;", "return s;", "s"},
                                           {"n--;", "while", "n"},
                                           {"n--;", "s += n;", "n"},
                                           {"n--;", "n--;", "n"}}));
}

TEST(Cpg, ForClausesAreSeparateNodes) {
  const Ast ast = parse("int f(int n) { int i, s = 0; for (i = 0; i < n; i++) s += i; return s; }");
  const Cpg g = buildCpg(ast);
  const auto edges = cfg(ast, g);
  EXPECT_TRUE(edges.count({"i = 0", "for"}));
  EXPECT_TRUE(edges.count({"for", "s += i;"}));
  EXPECT_TRUE(edges.count({"s += i;", "i++"}));
  EXPECT_TRUE(edges.count({"i++", "for"}));
  EXPECT_TRUE(edges.count({"for", "return s;"}));
  const auto d = duc(ast, g);
  EXPECT_TRUE(d.count({"i = 0", "for", "i"}));
  EXPECT_TRUE(d.count({"i++", "for", "i"}));
  EXPECT_TRUE(d.count({"i++", "i++", "i"}));
  EXPECT_TRUE(d.count({"i = 0", "s += i;", "i"}));
}

TEST(Cpg, AddressTakenVariablesAreMayDefined) {
  const testing::Fixture f = testing::loadFixtures("cpg")[2];
  ASSERT_EQ(f.name, "03_address_taken.c");
  const Ast ast = parse(f.text);
  const Cpg g = buildCpg(ast);
  // y is address-taken: the call and the store through q may redefine it
  // without killing the declaration's definition.
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"int y = x;", "int *q = &y;", "y"},
                                           {"int y = x;", "z = y + z;", "y"},
                                           {"touch(q);", "z = y + z;", "y"},
                                           {"*q = z + 1;", "z = y + z;", "y"},
                                           {"int y = x;", "return y + z;", "y"},
                                           {"touch(q);", "return y + z;", "y"},
                                           {"*q = z + 1;", "return y + z;", "y"},
                                           {"int z = 1;", "*q = z + 1;", "z"},
                                           {"int z = 1;", "z = y + z;", "z"},
                                           {"z = y + z;", "return y + z;", "z"},
                                           {"int *q = &y;", "touch(q);", "q"},
                                           {"int *q = &y;", "*q = z + 1;", "q"}}));
}

TEST(Cpg, UnreachableCodeHasNoDefUse) {
  const Ast ast = parse(testing::loadFixtures("cpg")[4].text);
  const Cpg g = buildCpg(ast);
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"int b = a;", "return b;", "b"}}));
}

TEST(Cpg, SwitchWithoutDefaultFallsThrough) {
  const Ast ast = parse("int f(int k) { int r = 0; switch (k) { case 1: r = 5; } return r; }");
  const Cpg g = buildCpg(ast);
  const auto edges = cfg(ast, g);
  EXPECT_TRUE(edges.count({"switch", "case 1:"}));
  EXPECT_TRUE(edges.count({"switch", "return r;"}));
  EXPECT_EQ(duc(ast, g), (std::set<Triple>{{"int r = 0;", "return r;", "r"},
                                           {"r = 5;", "return r;", "r"}}));
}

TEST(Cpg, UnresolvedGoto) {
  try {
    buildCpg(parse("void f(void) { goto nowhere; }"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnresolvedGoto);
  }
}

TEST(Cpg, ReachingDefinitionsMatchPathEnumeration) {
  size_t checked = 0;
  auto check = [&](const std::string& name, const std::string& text) {
    const Ast ast = parse(text);
    const Cpg g = buildCpg(ast);
    if (!testing::cfgIsAcyclic(g)) return;
    // Skip graphs whose path count would make enumeration slow.
    std::map<int, double> paths;
    std::function<double(int)> count = [&](int n) {
      auto it = paths.find(n);
      if (it != paths.end()) return it->second;
      double c = n == g.exit() ? 1 : 0;
      for (int s : g.successors(n, EdgeKind::Cfg)) c += count(s);
      return paths[n] = c;
    };
    if (count(g.entry()) > 20000) return;
    EXPECT_EQ(testing::ducEdges(g), testing::bruteForceDuc(ast, g)) << name;
    ++checked;
  };
  for (const testing::Fixture& f : testing::allFixtures()) check(f.name, f.text);
  testing::FunctionFuzzer fuzz(11);
  for (int k = 0; k < 400; ++k) {
    const std::string text = fuzz.next();
    try {
      check("fuzz " + std::to_string(k), text);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::UnresolvedGoto) << text;
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Cpg, NegationAddsTwoAstNodes) {
  const Cpg before = buildCpg(parse(testing::kNegationExample));
  const Cpg after = buildCpg(parse(testing::kNegationExampleNegated));
  const GraphDelta d = graphDiff(before, after);
  EXPECT_EQ(d.astNodeDelta(), 2);
  EXPECT_EQ(d.nodeDelta(), 2);
  EXPECT_EQ(d.astEdgeDelta(), 2);
  EXPECT_EQ(d.cfgEdgeDelta(), 0);
  EXPECT_EQ(d.ducEdgeDelta(), 0);
}

TEST(Cpg, GraphDiffPercent) {
  GraphDelta d;
  d.avgDegreeBefore = 2.0;
  d.avgDegreeAfter = 2.5;
  ASSERT_TRUE(d.avgDegreePercent());
  EXPECT_DOUBLE_EQ(*d.avgDegreePercent(), 25.0);
  d.avgDegreeBefore = 0;
  EXPECT_FALSE(d.avgDegreePercent());
}

TEST(Cpg, Exports) {
  const Ast ast = parse("int f(){int x=1; return x;}");
  const Cpg g = buildCpg(ast);
  const nlohmann::json j = nlohmann::json::parse(g.toJson());
  EXPECT_EQ(j.at("nodes").size(), g.nodes().size());
  EXPECT_EQ(j.at("edges").size(), g.edges().size());
  size_t ducs = 0;
  for (const auto& e : j.at("edges")) {
    if (e.at("kind") == "DUC") {
      ++ducs;
      EXPECT_EQ(e.at("var"), "x");
    }
  }
  EXPECT_EQ(ducs, 1u);
  const std::string dot = g.toDot();
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("->"), std::string::npos);
}

}  // namespace
}  // namespace natgvd
