#include "composer/composer.hpp"

#include <algorithm>
#include <unordered_set>

#include "common/error.hpp"

namespace natgvd {

namespace {

std::vector<TransformRule> orderedRules(const GenerationConfig& config) {
  std::vector<TransformRule> rules;
  for (TransformRule r : kAllRules) {
    if (std::find(config.enabledRules.begin(), config.enabledRules.end(), r) !=
        config.enabledRules.end()) {
      rules.push_back(r);
    }
  }
  return rules;
}

bool reparses(const std::string& text) {
  try {
    parse(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

// Single-step children of `text` with provenance appended to `prefix`.
std::vector<Variant> expand(const std::string& text, const std::string& parentId,
                            const std::vector<Step>& prefix,
                            const std::vector<TransformRule>& rules,
                            GenerationStats* stats) {
  const Ast ast = parse(text);
  std::vector<Variant> out;
  for (TransformRule rule : rules) {
    for (const Site& site : candidateNodes(ast, rule)) {
      if (stats) ++stats->sitesConsidered;
      if (!constraintsValid(ast, site)) continue;
      if (stats) ++stats->sitesValid;
      RewritePlan plan = applyRule(ast, site);
      Variant v;
      v.text = rewrite(text, plan.edits);
      if (v.text == text) continue;
      if (!reparses(v.text)) {
        if (stats) ++stats->reparseFailures;
        continue;
      }
      v.parentId = parentId;
      v.provenance = prefix;
      v.provenance.push_back(
          Step{rule, site.ordinal, std::move(plan.description), plan.commentDropped});
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

std::vector<Variant> generateSingle(const SourceUnit& unit, const GenerationConfig& config,
                                    GenerationStats* stats) {
  std::vector<Variant> all = expand(unit.text, unit.id, {}, orderedRules(config), stats);
  std::unordered_set<std::string> seen{unit.text};
  std::vector<Variant> out;
  for (Variant& v : all) {
    if (seen.insert(v.text).second) out.push_back(std::move(v));
  }
  if (stats) stats->variants += out.size();
  return out;
}

RuleEngine builtinEngine(TransformRule rule) {
  RuleEngine e;
  e.candidates = [rule](const Ast& ast) { return candidateNodes(ast, rule); };
  e.valid = [](const Ast& ast, const Site& site) { return constraintsValid(ast, site); };
  e.apply = [](const Ast& ast, const Site& site) { return applyRule(ast, site); };
  return e;
}

std::optional<Variant> saturate(const SourceUnit& unit, TransformRule tag,
                                const RuleEngine& engine, size_t minApplications,
                                size_t maxApplications) {
  std::string text = unit.text;
  std::optional<uint32_t> frontier;
  std::vector<Step> steps;
  while (true) {
    const Ast ast = parse(text);
    std::optional<Site> next;
    for (const Site& s : engine.candidates(ast)) {
      if (frontier && s.ordinal <= *frontier) continue;
      if (engine.valid(ast, s)) {
        next = s;
        break;
      }
    }
    if (!next) break;
    if (steps.size() >= maxApplications) {
      throw Error(ErrorCode::BudgetExceeded,
                  "multi-location application exceeded " + std::to_string(maxApplications) +
                      " steps");
    }
    RewritePlan plan = engine.apply(ast, *next);
    std::string rewritten = rewrite(text, plan.edits);
    frontier = mapOffset(next->ordinal, plan.edits);
    steps.push_back(Step{tag, next->ordinal, std::move(plan.description), plan.commentDropped});
    text = std::move(rewritten);
  }
  if (steps.size() < minApplications || text == unit.text) return std::nullopt;
  Variant v;
  v.text = std::move(text);
  v.parentId = unit.id;
  v.provenance = std::move(steps);
  return v;
}

std::optional<Variant> generateMultiLocation(const SourceUnit& unit, TransformRule rule) {
  parse(unit.text);
  std::optional<Variant> v = saturate(unit, rule, builtinEngine(rule));
  if (v && !reparses(v->text)) return std::nullopt;
  return v;
}

std::vector<Variant> generateMultiRule(const SourceUnit& unit, const GenerationConfig& config,
                                       GenerationStats* stats) {
  const std::vector<TransformRule> rules = orderedRules(config);
  std::vector<Variant> out;
  if (rules.empty() || config.maxDepth < 2) return out;

  std::unordered_set<std::string> seen{unit.text};
  size_t produced = 0;
  auto charge = [&](size_t n) {
    produced += n;
    if (produced > config.budget) {
      throw Error(ErrorCode::BudgetExceeded,
                  "sample " + unit.id + ": more than " + std::to_string(config.budget) +
                      " variants");
    }
  };

  std::vector<Variant> frontier;
  for (Variant& v : expand(unit.text, unit.id, {}, rules, stats)) {
    if (seen.insert(v.text).second) frontier.push_back(std::move(v));
  }
  charge(frontier.size());
  for (int depth = 2; depth <= config.maxDepth && !frontier.empty(); ++depth) {
    std::vector<Variant> next;
    for (const Variant& parent : frontier) {
      for (Variant& child : expand(parent.text, unit.id, parent.provenance, rules, stats)) {
        if (!seen.insert(child.text).second) continue;
        charge(1);
        next.push_back(std::move(child));
      }
    }
    for (const Variant& v : next) out.push_back(v);
    frontier = std::move(next);
  }
  if (stats) stats->variants += out.size();
  return out;
}

std::vector<Variant> generateAll(const SourceUnit& unit, const GenerationConfig& config,
                                 GenerationStats* stats) {
  std::vector<Variant> out;
  std::unordered_set<std::string> seen{unit.text};
  const size_t before = stats ? stats->variants : 0;
  auto take = [&](std::vector<Variant>&& batch) {
    for (Variant& v : batch) {
      if (seen.insert(v.text).second) out.push_back(std::move(v));
    }
  };
  if (config.modes.single) take(generateSingle(unit, config, stats));
  if (config.modes.multiLocation) {
    std::vector<Variant> batch;
    for (TransformRule r : orderedRules(config)) {
      if (auto v = generateMultiLocation(unit, r)) batch.push_back(std::move(*v));
    }
    take(std::move(batch));
  }
  if (config.modes.multiRule) take(generateMultiRule(unit, config, stats));
  if (config.enabledRules.empty()) out.clear();
  if (stats) stats->variants = before + out.size();
  return out;
}

std::string replay(std::string_view parentText, const std::vector<Step>& provenance) {
  std::string text(parentText);
  for (const Step& step : provenance) {
    const Ast ast = parse(text);
    std::optional<Site> found;
    for (const Site& s : candidateNodes(ast, step.rule)) {
      if (s.ordinal == step.ordinal) found = s;
    }
    if (!found || !constraintsValid(ast, *found)) {
      throw Error(ErrorCode::ReplayMismatch,
                  std::string(ruleName(step.rule)) + " site at byte " +
                      std::to_string(step.ordinal) + " not found during replay");
    }
    text = rewrite(text, applyRule(ast, *found).edits);
  }
  return text;
}

}  // namespace natgvd
