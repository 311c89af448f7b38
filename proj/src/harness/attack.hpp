#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness/corpus.hpp"
#include "harness/detector.hpp"
#include "transforms/rule.hpp"

namespace natgvd {

// Samples with target 1 that the detector labels vulnerable. `verdicts` may
// be in any order; samples without a verdict are not selected.
std::vector<CorpusRecord> selectTruePositives(const std::vector<CorpusRecord>& corpus,
                                              const std::vector<DetectorVerdict>& verdicts);

struct VariantOutcome {
  int64_t idx = 0;
  std::vector<TransformRule> rules;
  std::vector<uint32_t> sites;
  size_t editDistance = 0;
  int label = kVulnerable;

  bool evaded() const { return label == kNonVulnerable; }
  // The rule every step used, when there is exactly one.
  std::optional<TransformRule> singleRule() const;
};

struct SampleOutcome {
  int64_t idx = 0;
  std::vector<VariantOutcome> variants;

  bool evaded() const;
};

struct AttackReport {
  std::vector<SampleOutcome> samples;  // true positives only
  size_t corpusSize = 0;
  size_t variantsRejected = 0;  // failed the compile gate
};

// Fraction of true positives with at least one nonvulnerable variant.
// Throws Error(EmptyReport) when there are no samples.
double evasionRate(const AttackReport& report);

// Same quantity with every variant counted on its own.
std::optional<double> perVariantEvasionRate(const AttackReport& report);

struct RuleStats {
  TransformRule rule;
  size_t variants = 0;        // single-rule variants
  size_t evadedSamples = 0;   // samples with an evading single-rule variant
  double meanEditDistance = 0;
  double evasionPoints = 0;   // evadedSamples / samples, in percentage points
  double ierPerChar = 0;      // evasionPoints / meanEditDistance
};

// Per-rule figures over variants whose steps all use one rule, for every
// rule with at least one such variant, in rule enumeration order.
std::vector<RuleStats> ruleStats(const AttackReport& report);

// Rules by descending evaded-sample count, ties broken by lower mean edit
// distance, then enumeration order.
std::vector<RuleStats> rankRules(const AttackReport& report);

nlohmann::json reportJson(const AttackReport& report);
std::string reportText(const AttackReport& report);

}  // namespace natgvd
