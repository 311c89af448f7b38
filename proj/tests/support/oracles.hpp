#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cpg/cpg.hpp"
#include "parser/ast.hpp"
#include "transforms/rule.hpp"

namespace natgvd::testing {

// Textbook full-matrix edit distance.
size_t referenceLevenshtein(std::string_view a, std::string_view b);

using DucTriple = std::tuple<int, int, std::string>;  // def node, use node, variable

// True when the CFG restricted to nodes reachable from entry has no cycle.
bool cfgIsAcyclic(const Cpg& cpg);

// Reaching definitions by enumerating every entry path of an acyclic CFG:
// a definition of v at d reaches a use of v at n when some path visits d and
// later n with no must-definition of v strictly in between.
std::set<DucTriple> bruteForceDuc(const Ast& ast, const Cpg& cpg);

std::set<DucTriple> ducEdges(const Cpg& cpg);

// Attack figures recomputed from verdicts.jsonl alone.
struct Recount {
  size_t truePositives = 0;
  size_t evaded = 0;
  double rate = 0;
  struct PerRule {
    size_t evadedSamples = 0;
    size_t variants = 0;
    double distanceSum = 0;
  };
  std::map<TransformRule, PerRule> perRule;
  // Rules by evaded samples desc, mean distance asc, enumeration order.
  std::vector<TransformRule> ranking;
};
Recount recountVerdicts(const std::string& verdictsPath);

}  // namespace natgvd::testing
