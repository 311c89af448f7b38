#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parser/ast.hpp"

namespace natgvd {

enum class EdgeKind : uint8_t { Ast, Cfg, Duc };

std::string_view edgeKindName(EdgeKind kind);

struct CpgEdge {
  int src;
  int dst;
  EdgeKind kind;
  // Variable name for DUC edges, empty otherwise.
  std::string var;

  friend bool operator==(const CpgEdge&, const CpgEdge&) = default;
};

struct CpgNode {
  int id;
  std::string kind;  // AST kind name, or "Entry"/"Exit"
  Span span;
  bool cfg = false;        // participates in the control-flow graph
  bool reachable = false;  // reachable from entry (CFG nodes only)
};

// Node ids 0..astSize-1 mirror the AST; entry = astSize, exit = astSize + 1.
class Cpg {
 public:
  const std::vector<CpgNode>& nodes() const { return nodes_; }
  const std::vector<CpgEdge>& edges() const { return edges_; }
  int entry() const { return entry_; }
  int exit() const { return exit_; }
  size_t astNodeCount() const { return static_cast<size_t>(entry_); }
  size_t cfgNodeCount() const;
  size_t edgeCount(EdgeKind kind) const;
  // 2|E| / |V|
  double averageDegree() const;

  std::vector<int> successors(int node, EdgeKind kind) const;

  std::string toDot() const;
  std::string toJson() const;

 private:
  friend Cpg buildCpg(const Ast& ast);
  std::vector<CpgNode> nodes_;
  std::vector<CpgEdge> edges_;
  int entry_ = 0;
  int exit_ = 0;
};

// Throws Error(UnresolvedGoto).
Cpg buildCpg(const Ast& ast);

// Variables read and written by one CFG node, as used by the reaching
// definitions pass. Exposed for testing.
struct NodeAccess {
  std::vector<std::string> uses;
  std::vector<std::string> mustDefs;
  std::vector<std::string> mayDefs;
};
std::vector<NodeAccess> nodeAccesses(const Ast& ast, const Cpg& cpg);

struct GraphDelta {
  long nodesBefore = 0, nodesAfter = 0;
  long astNodesBefore = 0, astNodesAfter = 0;
  long cfgNodesBefore = 0, cfgNodesAfter = 0;
  long astEdgesBefore = 0, astEdgesAfter = 0;
  long cfgEdgesBefore = 0, cfgEdgesAfter = 0;
  long ducEdgesBefore = 0, ducEdgesAfter = 0;
  double avgDegreeBefore = 0, avgDegreeAfter = 0;

  long nodeDelta() const { return nodesAfter - nodesBefore; }
  long astNodeDelta() const { return astNodesAfter - astNodesBefore; }
  long cfgNodeDelta() const { return cfgNodesAfter - cfgNodesBefore; }
  long astEdgeDelta() const { return astEdgesAfter - astEdgesBefore; }
  long cfgEdgeDelta() const { return cfgEdgesAfter - cfgEdgesBefore; }
  long ducEdgeDelta() const { return ducEdgesAfter - ducEdgesBefore; }
  // (after - before) / before * 100; absent when before == 0.
  std::optional<double> avgDegreePercent() const;
};

GraphDelta graphDiff(const Cpg& before, const Cpg& after);

}  // namespace natgvd
