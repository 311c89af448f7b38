#include "harness/attack.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "common/error.hpp"

namespace natgvd {

std::vector<CorpusRecord> selectTruePositives(const std::vector<CorpusRecord>& corpus,
                                              const std::vector<DetectorVerdict>& verdicts) {
  std::map<int64_t, int> label;
  for (const DetectorVerdict& v : verdicts) label[v.idx] = v.label;
  std::vector<CorpusRecord> out;
  for (const CorpusRecord& r : corpus) {
    auto it = label.find(r.idx);
    if (r.target == 1 && it != label.end() && it->second == kVulnerable) out.push_back(r);
  }
  return out;
}

std::optional<TransformRule> VariantOutcome::singleRule() const {
  if (rules.empty()) return std::nullopt;
  for (TransformRule r : rules) {
    if (r != rules.front()) return std::nullopt;
  }
  return rules.front();
}

bool SampleOutcome::evaded() const {
  return std::any_of(variants.begin(), variants.end(),
                     [](const VariantOutcome& v) { return v.evaded(); });
}

double evasionRate(const AttackReport& report) {
  if (report.samples.empty()) {
    throw Error(ErrorCode::EmptyReport, "attack report has no true-positive samples");
  }
  const auto evaded = std::count_if(report.samples.begin(), report.samples.end(),
                                    [](const SampleOutcome& s) { return s.evaded(); });
  return static_cast<double>(evaded) / static_cast<double>(report.samples.size());
}

std::optional<double> perVariantEvasionRate(const AttackReport& report) {
  size_t total = 0, evaded = 0;
  for (const SampleOutcome& s : report.samples) {
    for (const VariantOutcome& v : s.variants) {
      ++total;
      evaded += v.evaded() ? 1 : 0;
    }
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(evaded) / static_cast<double>(total);
}

std::vector<RuleStats> ruleStats(const AttackReport& report) {
  std::vector<RuleStats> out;
  for (TransformRule rule : kAllRules) {
    RuleStats st{rule};
    size_t distance = 0;
    for (const SampleOutcome& s : report.samples) {
      bool evaded = false;
      for (const VariantOutcome& v : s.variants) {
        if (v.singleRule() != rule) continue;
        ++st.variants;
        distance += v.editDistance;
        evaded = evaded || v.evaded();
      }
      st.evadedSamples += evaded ? 1 : 0;
    }
    if (st.variants == 0) continue;
    st.meanEditDistance = static_cast<double>(distance) / static_cast<double>(st.variants);
    if (!report.samples.empty()) {
      st.evasionPoints = 100.0 * static_cast<double>(st.evadedSamples) /
                         static_cast<double>(report.samples.size());
    }
    st.ierPerChar = st.meanEditDistance > 0 ? st.evasionPoints / st.meanEditDistance : 0.0;
    out.push_back(st);
  }
  return out;
}

std::vector<RuleStats> rankRules(const AttackReport& report) {
  std::vector<RuleStats> stats = ruleStats(report);
  std::stable_sort(stats.begin(), stats.end(), [](const RuleStats& a, const RuleStats& b) {
    if (a.evadedSamples != b.evadedSamples) return a.evadedSamples > b.evadedSamples;
    return a.meanEditDistance < b.meanEditDistance;
  });
  return stats;
}

nlohmann::json reportJson(const AttackReport& report) {
  nlohmann::json j;
  j["corpus_size"] = report.corpusSize;
  j["true_positives"] = report.samples.size();
  size_t variants = 0;
  for (const SampleOutcome& s : report.samples) variants += s.variants.size();
  j["variants"] = variants;
  j["variants_rejected"] = report.variantsRejected;
  j["evasion_rate"] = report.samples.empty() ? nlohmann::json(nullptr)
                                             : nlohmann::json(evasionRate(report));
  const auto perVariant = perVariantEvasionRate(report);
  j["per_variant_evasion_rate"] = perVariant ? nlohmann::json(*perVariant) : nlohmann::json(nullptr);
  j["rules"] = nlohmann::json::array();
  for (const RuleStats& st : rankRules(report)) {
    j["rules"].push_back({{"rule", ruleName(st.rule)},
                          {"variants", st.variants},
                          {"evaded_samples", st.evadedSamples},
                          {"evasion_points", st.evasionPoints},
                          {"mean_edit_distance", st.meanEditDistance},
                          {"ier_per_char", st.ierPerChar}});
  }
  j["samples"] = nlohmann::json::array();
  for (const SampleOutcome& s : report.samples) {
    nlohmann::json vs = nlohmann::json::array();
    for (const VariantOutcome& v : s.variants) vs.push_back({{"idx", v.idx}, {"label", v.label}});
    j["samples"].push_back({{"idx", s.idx}, {"evaded", s.evaded()}, {"variants", vs}});
  }
  return j;
}

std::string reportText(const AttackReport& report) {
  std::ostringstream os;
  size_t variants = 0;
  for (const SampleOutcome& s : report.samples) variants += s.variants.size();
  os << "samples: " << report.corpusSize << "  true positives: " << report.samples.size()
     << "  variants: " << variants << "\n";
  char buf[160];
  if (!report.samples.empty()) {
    std::snprintf(buf, sizeof buf, "evasion rate: %.2f%%\n", 100.0 * evasionRate(report));
    os << buf;
  }
  os << "\n";
  std::snprintf(buf, sizeof buf, "%-4s %-20s %9s %8s %10s %10s %8s\n", "rank", "rule", "variants",
                "evaded", "rate(pp)", "mean dist", "IER/CC");
  os << buf;
  int rank = 1;
  for (const RuleStats& st : rankRules(report)) {
    std::snprintf(buf, sizeof buf, "%-4d %-20s %9zu %8zu %10.2f %10.1f %8.3f\n", rank++,
                  std::string(ruleName(st.rule)).c_str(), st.variants, st.evadedSamples,
                  st.evasionPoints, st.meanEditDistance, st.ierPerChar);
    os << buf;
  }
  return os.str();
}

}  // namespace natgvd
