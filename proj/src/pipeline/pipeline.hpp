#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "composer/composer.hpp"

namespace natgvd {

struct RunConfig {
  std::string input;     // corpus JSONL
  std::string output;    // output directory
  std::string variants;  // optional variants JSONL (metrics, graphdiff, validate)
  std::string baseline;  // "" or "rename" (metrics, graphdiff, validate)
  std::vector<TransformRule> rules{kAllRules.begin(), kAllRules.end()};
  Modes modes;
  int maxDepth = 2;
  size_t budget = 10000;
  std::string detector;
  bool perSample = false;
  size_t batchSize = 256;
  int detectorTimeoutMs = 600000;
  std::string compiler = "cc";
  bool compileGate = false;   // attack: drop variants that do not compile
  bool differential = true;   // validate: run differential tests
  size_t diffInputs = 256;
  double augmentRatio = -1;   // attack: export evading variants when >= 0
  bool exportGraphs = false;  // graphdiff: write DOT/JSON per graph
  uint64_t seed = 0;
  size_t workers = 1;
  bool strict = false;
  bool strictPerf = false;
  double perfFloor = 10.0;  // variants per second
};

nlohmann::json manifestJson(const RunConfig& config, const std::string& command);

// Each command writes its outputs into config.output and throws Error on
// failure. Progress and timing go to stderr.
void cmdTransform(const RunConfig& config);
void cmdAttack(const RunConfig& config);
void cmdMetrics(const RunConfig& config);
void cmdGraphDiff(const RunConfig& config);
void cmdValidate(const RunConfig& config);

}  // namespace natgvd
