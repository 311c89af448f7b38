#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parser/parser.hpp"
#include "transforms/transforms.hpp"

namespace natgvd {

struct Step {
  TransformRule rule;
  uint32_t ordinal;  // site ordinal in the text the step was applied to
  std::string description;
  bool commentDropped = false;
};

struct Variant {
  std::string text;
  std::string parentId;
  std::vector<Step> provenance;

  size_t depth() const { return provenance.size(); }
};

struct Modes {
  bool single = true;
  bool multiLocation = false;
  bool multiRule = false;
};

struct GenerationConfig {
  std::vector<TransformRule> enabledRules{kAllRules.begin(), kAllRules.end()};
  int maxDepth = 2;
  Modes modes;
  size_t budget = 10000;
};

// Counters a caller may collect across calls.
struct GenerationStats {
  size_t variants = 0;
  size_t sitesConsidered = 0;
  size_t sitesValid = 0;
  // Variants whose text failed to re-parse; always zero unless a rule has a
  // bug. They are dropped.
  size_t reparseFailures = 0;
};

// One variant per (rule, valid site), rule enumeration order then ordinal.
std::vector<Variant> generateSingle(const SourceUnit& unit, const GenerationConfig& config,
                                    GenerationStats* stats = nullptr);

std::optional<Variant> generateMultiLocation(const SourceUnit& unit, TransformRule rule);

// Variants of depth 2..maxDepth, breadth first, deduplicated by text.
std::vector<Variant> generateMultiRule(const SourceUnit& unit, const GenerationConfig& config,
                                       GenerationStats* stats = nullptr);

std::vector<Variant> generateAll(const SourceUnit& unit, const GenerationConfig& config,
                                 GenerationStats* stats = nullptr);

// Re-applies a provenance chain to the parent text. Throws
// Error(ReplayMismatch) when a step no longer finds its site.
std::string replay(std::string_view parentText, const std::vector<Step>& provenance);

// Pluggable site finder/applier, so that saturation can be exercised with
// rules other than the built-in ones.
struct RuleEngine {
  std::function<std::vector<Site>(const Ast&)> candidates;
  std::function<bool(const Ast&, const Site&)> valid;
  std::function<RewritePlan(const Ast&, const Site&)> apply;
};

RuleEngine builtinEngine(TransformRule rule);

// Saturating application at strictly increasing ordinals. Returns the final
// text's variant when at least `minApplications` steps happened.
std::optional<Variant> saturate(const SourceUnit& unit, TransformRule tag,
                                const RuleEngine& engine, size_t minApplications = 2,
                                size_t maxApplications = 10000);

}  // namespace natgvd
