#include "cpg/cpg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"

namespace natgvd {

namespace {

struct BuildCtx {
  int breakTarget = -1;
  int continueTarget = -1;
  std::vector<int>* cases = nullptr;  // case labels of the innermost switch
  bool switchHasDefault = false;
};

class CfgBuilder {
 public:
  CfgBuilder(const Ast& ast, int entry, int exit)
      : ast_(ast), entry_(entry), exit_(exit) {}

  std::set<std::pair<int, int>> edges;
  std::vector<bool> isCfg;

  void run() {
    isCfg.assign(ast_.size() + 2, false);
    isCfg[entry_] = isCfg[exit_] = true;
    BuildCtx ctx;
    const int first = build(ast_.functionBody(), exit_, ctx);
    edges.insert({entry_, first});
    for (auto [from, label] : gotos_) {
      auto it = labels_.find(label);
      if (it == labels_.end()) {
        throw Error(ErrorCode::UnresolvedGoto, "goto target '" + label + "' is not defined");
      }
      edges.insert({from, it->second});
    }
  }

 private:
  void edge(int a, int b) { edges.insert({a, b}); }
  int mark(NodeId id) {
    isCfg[id] = true;
    return id;
  }

  // Returns the entry node of `id` given its successor `next`.
  int build(NodeId id, int next, BuildCtx& ctx) {
    const AstNode& n = ast_.node(id);
    switch (n.kind) {
      case NodeKind::CompoundStmt: {
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
          next = build(*it, next, ctx);
        }
        return next;
      }
      case NodeKind::ReturnStmt:
        edge(mark(id), exit_);
        return id;
      case NodeKind::BreakStmt:
        edge(mark(id), ctx.breakTarget >= 0 ? ctx.breakTarget : next);
        return id;
      case NodeKind::ContinueStmt:
        edge(mark(id), ctx.continueTarget >= 0 ? ctx.continueTarget : next);
        return id;
      case NodeKind::GotoStmt:
        mark(id);
        gotos_.push_back({id, n.name});
        return id;
      case NodeKind::LabelStmt: {
        mark(id);
        labels_[n.name] = id;
        edge(id, n.children.empty() ? next : build(n.children[0], next, ctx));
        return id;
      }
      case NodeKind::CaseLabel: {
        mark(id);
        if (ctx.cases) ctx.cases->push_back(id);
        if (n.op == "default") ctx.switchHasDefault = true;
        const bool hasStmt = n.op == "default" ? !n.children.empty() : n.children.size() > 1;
        edge(id, hasStmt ? build(n.children.back(), next, ctx) : next);
        return id;
      }
      case NodeKind::IfStmt: {
        mark(id);
        edge(id, build(ast_.ifThen(id), next, ctx));
        const NodeId e = ast_.ifElse(id);
        edge(id, e == kNoNode ? next : build(e, next, ctx));
        return id;
      }
      case NodeKind::WhileStmt: {
        mark(id);
        BuildCtx inner = ctx;
        inner.breakTarget = next;
        inner.continueTarget = id;
        edge(id, build(n.children[1], id, inner));
        edge(id, next);
        return id;
      }
      case NodeKind::DoWhileStmt: {
        mark(id);
        BuildCtx inner = ctx;
        inner.breakTarget = next;
        inner.continueTarget = id;
        const int body = build(n.children[0], id, inner);
        edge(id, body);
        edge(id, next);
        return body;
      }
      case NodeKind::ForStmt: {
        mark(id);
        const ForClauses fc = ast_.forClauses(id);
        const int upd = fc.update != kNoNode ? mark(fc.update) : -1;
        BuildCtx inner = ctx;
        inner.breakTarget = next;
        inner.continueTarget = upd >= 0 ? upd : id;
        edge(id, build(fc.body, upd >= 0 ? upd : id, inner));
        if (upd >= 0) edge(upd, id);
        if (fc.cond != kNoNode) edge(id, next);
        if (fc.init != kNoNode) {
          edge(mark(fc.init), id);
          return fc.init;
        }
        return id;
      }
      case NodeKind::SwitchStmt: {
        mark(id);
        std::vector<int> cases;
        BuildCtx inner = ctx;
        inner.breakTarget = next;
        inner.cases = &cases;
        inner.switchHasDefault = false;
        build(n.children[1], next, inner);
        for (int c : cases) edge(id, c);
        if (!inner.switchHasDefault) edge(id, next);
        return id;
      }
      default:
        // ExprStmt, DeclStmt, OpaqueStmt and anything else statement-like.
        edge(mark(id), next);
        return id;
    }
  }

  const Ast& ast_;
  int entry_;
  int exit_;
  std::vector<std::pair<int, std::string>> gotos_;
  std::map<std::string, int> labels_;
};

// Collects variable accesses of the expression region of one CFG node.
class AccessCollector {
 public:
  AccessCollector(const Ast& ast, const std::set<std::string>& addressTaken)
      : ast_(ast), addressTaken_(addressTaken) {}

  NodeAccess collect(NodeId node) {
    out_ = NodeAccess{};
    const AstNode& n = ast_.node(node);
    switch (n.kind) {
      case NodeKind::IfStmt:
      case NodeKind::WhileStmt:
      case NodeKind::SwitchStmt:
        visit(n.children[0]);
        break;
      case NodeKind::DoWhileStmt:
        visit(n.children[1]);
        break;
      case NodeKind::ForStmt: {
        const ForClauses fc = ast_.forClauses(node);
        if (fc.cond != kNoNode) visit(fc.cond);
        break;
      }
      case NodeKind::CaseLabel:
      case NodeKind::LabelStmt:
      case NodeKind::BreakStmt:
      case NodeKind::ContinueStmt:
      case NodeKind::GotoStmt:
        break;
      case NodeKind::DeclStmt:
        for (NodeId d : n.children) {
          if (ast_.kind(d) == NodeKind::AssignExpr) {
            visit(ast_.node(d).children[1]);
            mustDef(ast_.node(d).children[0]);
          } else if (ast_.kind(d) == NodeKind::OpaqueStmt) {
            visit(d);
          }
        }
        break;
      default:
        visit(node);
        break;
    }
    dedupe(out_.uses);
    dedupe(out_.mustDefs);
    dedupe(out_.mayDefs);
    return out_;
  }

 private:
  static void dedupe(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  void use(NodeId ident) { out_.uses.emplace_back(ast_.text(ident)); }
  void mustDef(NodeId ident) { out_.mustDefs.emplace_back(ast_.text(ident)); }
  void mayDef(const std::string& name) { out_.mayDefs.push_back(name); }
  void clobberAddressTaken() {
    for (const std::string& v : addressTaken_) mayDef(v);
  }

  void opaque(NodeId id) {
    const Span s = ast_.node(id).span;
    for (const Token& t : ast_.tokens()) {
      if (t.span.begin >= s.begin && t.span.end <= s.end &&
          t.kind == TokenKind::Identifier) {
        const std::string name(ast_.text(t.span));
        out_.uses.push_back(name);
        mayDef(name);
      }
    }
    clobberAddressTaken();
  }

  // Identifier at the root of an lvalue path (a[i].f -> a), or kNoNode when
  // the path goes through a dereference or call.
  NodeId rootIdentifier(NodeId id) {
    while (true) {
      const AstNode& n = ast_.node(id);
      if (n.kind == NodeKind::Identifier) return id;
      if (n.kind == NodeKind::ParenExpr || n.kind == NodeKind::IndexExpr ||
          n.kind == NodeKind::MemberExpr) {
        id = n.children[0];
        continue;
      }
      return kNoNode;
    }
  }

  void lvalue(NodeId id, bool alsoUse) {
    const AstNode& n = ast_.node(id);
    switch (n.kind) {
      case NodeKind::Identifier:
        if (alsoUse) use(id);
        mustDef(id);
        return;
      case NodeKind::ParenExpr:
        lvalue(n.children[0], alsoUse);
        return;
      case NodeKind::IndexExpr:
      case NodeKind::MemberExpr: {
        for (NodeId c : n.children) visit(c);
        const NodeId root = rootIdentifier(id);
        if (root != kNoNode) {
          mayDef(std::string(ast_.text(root)));
        } else {
          clobberAddressTaken();
        }
        return;
      }
      case NodeKind::UnaryExpr:
        if (n.op == "*") {
          visit(n.children[0]);
          clobberAddressTaken();
          return;
        }
        visit(id);
        return;
      default:
        visit(id);
        return;
    }
  }

  void visit(NodeId id) {
    const AstNode& n = ast_.node(id);
    switch (n.kind) {
      case NodeKind::Identifier:
        use(id);
        return;
      case NodeKind::OpaqueStmt:
        opaque(id);
        return;
      case NodeKind::AssignExpr:
        visit(n.children[1]);
        lvalue(n.children[0], false);
        return;
      case NodeKind::CompoundAssignExpr:
        visit(n.children[1]);
        lvalue(n.children[0], true);
        return;
      case NodeKind::UnaryExpr:
        if (n.op == "++" || n.op == "--") {
          lvalue(n.children[0], true);
          return;
        }
        break;
      case NodeKind::CallExpr:
        for (size_t i = 0; i < n.children.size(); ++i) {
          if (i == 0 && ast_.kind(n.children[0]) == NodeKind::Identifier) continue;
          visit(n.children[i]);
        }
        clobberAddressTaken();
        return;
      default:
        break;
    }
    for (NodeId c : n.children) visit(c);
  }

  const Ast& ast_;
  const std::set<std::string>& addressTaken_;
  NodeAccess out_;
};

std::set<std::string> addressTakenVars(const Ast& ast) {
  std::set<std::string> out;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind == NodeKind::UnaryExpr && n.op == "&" && !n.children.empty()) {
      NodeId c = n.children[0];
      while (ast.kind(c) == NodeKind::ParenExpr || ast.kind(c) == NodeKind::IndexExpr ||
             ast.kind(c) == NodeKind::MemberExpr) {
        c = ast.node(c).children[0];
      }
      if (ast.kind(c) == NodeKind::Identifier) out.emplace(ast.text(c));
    }
    // Arrays decay to pointers, so callees can write them.
    if (n.kind == NodeKind::Identifier && n.typeText.find('[') != std::string::npos) {
      out.emplace(ast.text(n.id));
    }
  }
  return out;
}

}  // namespace

std::string_view edgeKindName(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Ast: return "AST";
    case EdgeKind::Cfg: return "CFG";
    case EdgeKind::Duc: return "DUC";
  }
  return "?";
}

size_t Cpg::cfgNodeCount() const {
  return static_cast<size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const CpgNode& n) { return n.cfg; }));
}

size_t Cpg::edgeCount(EdgeKind kind) const {
  return static_cast<size_t>(std::count_if(
      edges_.begin(), edges_.end(), [kind](const CpgEdge& e) { return e.kind == kind; }));
}

double Cpg::averageDegree() const {
  return nodes_.empty() ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / nodes_.size();
}

std::vector<int> Cpg::successors(int node, EdgeKind kind) const {
  std::vector<int> out;
  for (const CpgEdge& e : edges_) {
    if (e.kind == kind && e.src == node) out.push_back(e.dst);
  }
  return out;
}

std::vector<NodeAccess> nodeAccesses(const Ast& ast, const Cpg& cpg) {
  const std::set<std::string> taken = addressTakenVars(ast);
  AccessCollector collector(ast, taken);
  std::vector<NodeAccess> out(cpg.nodes().size());
  for (const CpgNode& n : cpg.nodes()) {
    if (n.cfg && n.id < cpg.entry()) out[n.id] = collector.collect(n.id);
  }
  return out;
}

Cpg buildCpg(const Ast& ast) {
  Cpg g;
  const int astSize = static_cast<int>(ast.size());
  g.entry_ = astSize;
  g.exit_ = astSize + 1;
  for (const AstNode& n : ast.nodes()) {
    g.nodes_.push_back(CpgNode{n.id, std::string(nodeKindName(n.kind)), n.span});
  }
  g.nodes_.push_back(CpgNode{g.entry_, "Entry", Span{}});
  g.nodes_.push_back(CpgNode{g.exit_, "Exit", Span{}});

  for (const AstNode& n : ast.nodes()) {
    for (NodeId c : n.children) g.edges_.push_back(CpgEdge{n.id, c, EdgeKind::Ast, {}});
  }

  CfgBuilder cfg(ast, g.entry_, g.exit_);
  cfg.run();
  std::vector<std::vector<int>> succ(g.nodes_.size());
  for (auto [a, b] : cfg.edges) {
    g.edges_.push_back(CpgEdge{a, b, EdgeKind::Cfg, {}});
    succ[a].push_back(b);
  }
  for (size_t i = 0; i < g.nodes_.size(); ++i) g.nodes_[i].cfg = cfg.isCfg[i];

  std::vector<int> stack{g.entry_};
  g.nodes_[g.entry_].reachable = true;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int s : succ[cur]) {
      if (!g.nodes_[s].reachable) {
        g.nodes_[s].reachable = true;
        stack.push_back(s);
      }
    }
  }

  // Reaching definitions over reachable CFG nodes.
  const std::vector<NodeAccess> acc = nodeAccesses(ast, g);
  struct Def {
    int node;
    std::string var;
  };
  std::vector<Def> defs;
  std::vector<std::vector<size_t>> gen(g.nodes_.size());
  std::map<std::string, std::vector<size_t>> defsOf;
  for (const CpgNode& n : g.nodes_) {
    if (!n.cfg || !n.reachable || n.id >= g.entry_) continue;
    std::set<std::string> vars(acc[n.id].mustDefs.begin(), acc[n.id].mustDefs.end());
    vars.insert(acc[n.id].mayDefs.begin(), acc[n.id].mayDefs.end());
    for (const std::string& v : vars) {
      gen[n.id].push_back(defs.size());
      defsOf[v].push_back(defs.size());
      defs.push_back(Def{n.id, v});
    }
  }
  const size_t D = defs.size();
  std::vector<std::vector<bool>> kill(g.nodes_.size());
  for (const CpgNode& n : g.nodes_) {
    if (!n.cfg || !n.reachable || n.id >= g.entry_) continue;
    kill[n.id].assign(D, false);
    for (const std::string& v : acc[n.id].mustDefs) {
      for (size_t d : defsOf[v]) kill[n.id][d] = defs[d].node != n.id;
    }
  }
  std::vector<std::vector<int>> pred(g.nodes_.size());
  for (auto [a, b] : cfg.edges) {
    if (g.nodes_[a].reachable) pred[b].push_back(a);
  }
  std::vector<std::vector<bool>> in(g.nodes_.size(), std::vector<bool>(D, false));
  std::vector<std::vector<bool>> out(g.nodes_.size(), std::vector<bool>(D, false));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const CpgNode& n : g.nodes_) {
      if (!n.cfg || !n.reachable) continue;
      std::vector<bool> newIn(D, false);
      for (int p : pred[n.id]) {
        for (size_t d = 0; d < D; ++d) {
          if (out[p][d]) newIn[d] = true;
        }
      }
      std::vector<bool> newOut = newIn;
      if (n.id < g.entry_) {
        for (size_t d = 0; d < D; ++d) {
          if (kill[n.id][d]) newOut[d] = false;
        }
        for (size_t d : gen[n.id]) newOut[d] = true;
      }
      if (newIn != in[n.id] || newOut != out[n.id]) {
        in[n.id] = std::move(newIn);
        out[n.id] = std::move(newOut);
        changed = true;
      }
    }
  }
  std::set<std::tuple<int, int, std::string>> duc;
  for (const CpgNode& n : g.nodes_) {
    if (!n.cfg || !n.reachable || n.id >= g.entry_) continue;
    for (const std::string& v : acc[n.id].uses) {
      auto it = defsOf.find(v);
      if (it == defsOf.end()) continue;
      for (size_t d : it->second) {
        if (in[n.id][d]) duc.insert({defs[d].node, n.id, v});
      }
    }
  }
  for (const auto& [a, b, v] : duc) g.edges_.push_back(CpgEdge{a, b, EdgeKind::Duc, v});
  return g;
}

std::string Cpg::toDot() const {
  std::ostringstream os;
  os << "digraph cpg {\n";
  for (const CpgNode& n : nodes_) {
    os << "  n" << n.id << " [label=\"" << n.id << ": " << n.kind << "\"";
    if (n.cfg) os << ", shape=box";
    os << "];\n";
  }
  for (const CpgEdge& e : edges_) {
    os << "  n" << e.src << " -> n" << e.dst;
    switch (e.kind) {
      case EdgeKind::Ast: os << " [color=black]"; break;
      case EdgeKind::Cfg: os << " [color=blue]"; break;
      case EdgeKind::Duc: os << " [color=red, label=\"" << e.var << "\"]"; break;
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string Cpg::toJson() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const CpgNode& n : nodes_) {
    j["nodes"].push_back({{"id", n.id}, {"kind", n.kind}, {"span", {n.span.begin, n.span.end}}});
  }
  j["edges"] = nlohmann::json::array();
  for (const CpgEdge& e : edges_) {
    nlohmann::json edge = {{"src", e.src}, {"dst", e.dst}, {"kind", edgeKindName(e.kind)}};
    if (e.kind == EdgeKind::Duc) edge["var"] = e.var;
    j["edges"].push_back(std::move(edge));
  }
  return j.dump();
}

std::optional<double> GraphDelta::avgDegreePercent() const {
  if (avgDegreeBefore <= 0) return std::nullopt;
  return (avgDegreeAfter - avgDegreeBefore) / avgDegreeBefore * 100.0;
}

GraphDelta graphDiff(const Cpg& before, const Cpg& after) {
  GraphDelta d;
  d.nodesBefore = static_cast<long>(before.nodes().size());
  d.nodesAfter = static_cast<long>(after.nodes().size());
  d.astNodesBefore = static_cast<long>(before.astNodeCount());
  d.astNodesAfter = static_cast<long>(after.astNodeCount());
  d.cfgNodesBefore = static_cast<long>(before.cfgNodeCount());
  d.cfgNodesAfter = static_cast<long>(after.cfgNodeCount());
  d.astEdgesBefore = static_cast<long>(before.edgeCount(EdgeKind::Ast));
  d.astEdgesAfter = static_cast<long>(after.edgeCount(EdgeKind::Ast));
  d.cfgEdgesBefore = static_cast<long>(before.edgeCount(EdgeKind::Cfg));
  d.cfgEdgesAfter = static_cast<long>(after.edgeCount(EdgeKind::Cfg));
  d.ducEdgesBefore = static_cast<long>(before.edgeCount(EdgeKind::Duc));
  d.ducEdgesAfter = static_cast<long>(after.edgeCount(EdgeKind::Duc));
  d.avgDegreeBefore = before.averageDegree();
  d.avgDegreeAfter = after.averageDegree();
  return d;
}

}  // namespace natgvd
