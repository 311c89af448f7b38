#include "natgvd/natgvd.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "common/error.hpp"
#include "composer/composer.hpp"
#include "cpg/cpg.hpp"
#include "metrics/metrics.hpp"
#include "parser/parser.hpp"
#include "pipeline/pipeline.hpp"

struct natgvd_ast {
  natgvd::Ast ast;
};

struct natgvd_variants {
  std::vector<natgvd::Variant> variants;
  std::vector<std::string> provenance;
};

struct natgvd_cpg {
  natgvd::Cpg cpg;
};

struct natgvd_config {
  natgvd::RunConfig config;
};

namespace {

thread_local std::string lastError;

static_assert(static_cast<int>(natgvd::ErrorCode::UnbalancedDelimiters) + 1 ==
              NATGVD_ERR_UNBALANCED_DELIMITERS);
static_assert(static_cast<int>(natgvd::ErrorCode::NoTruePositives) + 1 == NATGVD_ERR_NO_TRUE_POSITIVES);
static_assert(static_cast<int>(natgvd::ErrorCode::Internal) + 1 == NATGVD_ERR_INTERNAL);

natgvd_status statusOf(natgvd::ErrorCode code) {
  // ErrorCode and natgvd_status list the same codes in the same order.
  return static_cast<natgvd_status>(static_cast<int>(code) + 1);
}

natgvd_status fail(natgvd_status status, const std::string& message) {
  lastError = message;
  return status;
}

template <typename F>
natgvd_status guarded(F fn) {
  try {
    lastError.clear();
    fn();
    return NATGVD_OK;
  } catch (const natgvd::Error& e) {
    return fail(statusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NATGVD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NATGVD_ERR_INTERNAL, e.what());
  }
}

char* copyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

natgvd::Error invalid(const std::string& msg) {
  return natgvd::Error(natgvd::ErrorCode::InvalidArgument, msg);
}

bool parseBool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw invalid("option " + key + " expects true or false, got '" + v + "'");
}

uint64_t parseUnsigned(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long n = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return n;
  } catch (const std::logic_error&) {
    throw invalid("option " + key + " expects a non-negative integer, got '" + v + "'");
  }
}

double parseDouble(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::logic_error&) {
    throw invalid("option " + key + " expects a number, got '" + v + "'");
  }
}

std::vector<std::string> splitList(const std::string& v) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= v.size()) {
    size_t end = v.find(',', pos);
    if (end == std::string::npos) end = v.size();
    std::string item = v.substr(pos, end - pos);
    const size_t a = item.find_first_not_of(' ');
    const size_t b = item.find_last_not_of(' ');
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    pos = end + 1;
  }
  return out;
}

void setOption(natgvd::RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "input") {
    c.input = v;
  } else if (key == "output") {
    c.output = v;
  } else if (key == "variants") {
    c.variants = v;
  } else if (key == "baseline") {
    if (!v.empty() && v != "rename") throw invalid("unknown baseline '" + v + "'");
    c.baseline = v;
  } else if (key == "rules") {
    c.rules.clear();
    for (const std::string& name : splitList(v)) {
      if (name == "all") {
        c.rules.assign(natgvd::kAllRules.begin(), natgvd::kAllRules.end());
        continue;
      }
      auto rule = natgvd::parseRule(name);
      if (!rule) throw invalid("unknown rule '" + name + "'");
      if (std::find(c.rules.begin(), c.rules.end(), *rule) == c.rules.end()) c.rules.push_back(*rule);
    }
  } else if (key == "modes") {
    natgvd::Modes m{false, false, false};
    for (const std::string& mode : splitList(v)) {
      if (mode == "single") {
        m.single = true;
      } else if (mode == "multi-location") {
        m.multiLocation = true;
      } else if (mode == "multi-rule") {
        m.multiRule = true;
      } else if (mode == "all") {
        m = {true, true, true};
      } else {
        throw invalid("unknown mode '" + mode + "'");
      }
    }
    c.modes = m;
  } else if (key == "max-depth" || key == "max_depth") {
    c.maxDepth = static_cast<int>(parseUnsigned(key, v));
  } else if (key == "budget") {
    c.budget = parseUnsigned(key, v);
  } else if (key == "detector") {
    c.detector = v;
  } else if (key == "per-sample") {
    c.perSample = parseBool(key, v);
  } else if (key == "batch-size") {
    c.batchSize = std::max<uint64_t>(parseUnsigned(key, v), 1);
  } else if (key == "detector-timeout-ms") {
    c.detectorTimeoutMs = static_cast<int>(parseUnsigned(key, v));
  } else if (key == "compiler") {
    c.compiler = v;
  } else if (key == "compile-gate") {
    c.compileGate = parseBool(key, v);
  } else if (key == "differential") {
    c.differential = parseBool(key, v);
  } else if (key == "diff-inputs") {
    c.diffInputs = parseUnsigned(key, v);
  } else if (key == "augment-ratio") {
    c.augmentRatio = parseDouble(key, v);
    if (c.augmentRatio > 1) throw invalid("augment-ratio must be within [0, 1]");
  } else if (key == "export-graphs") {
    c.exportGraphs = parseBool(key, v);
  } else if (key == "seed") {
    c.seed = parseUnsigned(key, v);
  } else if (key == "workers") {
    c.workers = std::max<uint64_t>(parseUnsigned(key, v), 1);
  } else if (key == "strict") {
    c.strict = parseBool(key, v);
  } else if (key == "strict-perf") {
    c.strictPerf = parseBool(key, v);
  } else if (key == "perf-floor") {
    c.perfFloor = parseDouble(key, v);
  } else {
    throw invalid("unknown option '" + key + "'");
  }
}

std::string provenanceJson(const natgvd::Variant& v) {
  nlohmann::json rules = nlohmann::json::array(), sites = nlohmann::json::array(),
                 steps = nlohmann::json::array();
  for (const natgvd::Step& s : v.provenance) {
    rules.push_back(std::string(natgvd::ruleName(s.rule)));
    sites.push_back(s.ordinal);
    steps.push_back({{"rule", natgvd::ruleName(s.rule)},
                     {"site", s.ordinal},
                     {"description", s.description},
                     {"comment_dropped", s.commentDropped}});
  }
  return nlohmann::json{{"rules", rules}, {"sites", sites}, {"steps", steps}}.dump();
}

}  // namespace

extern "C" {

const char* natgvd_version(void) { return NATGVD_VERSION; }

const char* natgvd_status_name(natgvd_status status) {
  if (status == NATGVD_OK) return "Ok";
  if (status < NATGVD_OK || status > NATGVD_ERR_INTERNAL) return "Unknown";
  static thread_local std::string name;
  name = natgvd::errorCodeName(static_cast<natgvd::ErrorCode>(status - 1));
  return name.c_str();
}

int natgvd_status_exit_code(natgvd_status status) {
  switch (status) {
    case NATGVD_OK:
      return 0;
    case NATGVD_ERR_INVALID_ARGUMENT:
      return 1;
    case NATGVD_ERR_DETECTOR_SPAWN_FAILURE:
    case NATGVD_ERR_PROTOCOL_VIOLATION:
    case NATGVD_ERR_TIMEOUT:
    case NATGVD_ERR_COMPILER_SPAWN_FAILURE:
    case NATGVD_ERR_COMPILE_FAILURE:
    case NATGVD_ERR_EXECUTION_TIMEOUT:
      return 3;
    default:
      return 2;
  }
}

const char* natgvd_last_error(void) { return lastError.c_str(); }

void natgvd_string_free(char* s) { std::free(s); }

natgvd_status natgvd_parse(const char* text, size_t length, natgvd_ast** out) {
  if (!text || !out) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new natgvd_ast{natgvd::parse(std::string_view(text, length))}; });
}

void natgvd_ast_free(natgvd_ast* ast) { delete ast; }

size_t natgvd_ast_node_count(const natgvd_ast* ast) { return ast ? ast->ast.size() : 0; }

const char* natgvd_ast_function_name(const natgvd_ast* ast) {
  return ast ? ast->ast.node(ast->ast.root()).name.c_str() : "";
}

void natgvd_generate_options_init(natgvd_generate_options* options) {
  if (!options) return;
  options->rules = NATGVD_ALL_RULES;
  options->modes = NATGVD_MODE_SINGLE;
  options->max_depth = 2;
  options->budget = 10000;
}

int natgvd_rule_index(const char* name) {
  if (!name) return -1;
  auto rule = natgvd::parseRule(name);
  return rule ? static_cast<int>(*rule) : -1;
}

const char* natgvd_rule_name(int index) {
  if (index < 0 || index >= NATGVD_RULE_COUNT) return "";
  return natgvd::ruleFlagName(natgvd::kAllRules[static_cast<size_t>(index)]).data();
}

natgvd_status natgvd_generate(const char* text, const natgvd_generate_options* options,
                              natgvd_variants** out) {
  if (!text || !out) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  natgvd_generate_options opts;
  natgvd_generate_options_init(&opts);
  if (options) opts = *options;
  return guarded([&] {
    natgvd::GenerationConfig g;
    g.enabledRules.clear();
    for (size_t i = 0; i < natgvd::kAllRules.size(); ++i) {
      if (opts.rules & (1u << i)) g.enabledRules.push_back(natgvd::kAllRules[i]);
    }
    g.modes = {(opts.modes & NATGVD_MODE_SINGLE) != 0, (opts.modes & NATGVD_MODE_MULTI_LOCATION) != 0,
               (opts.modes & NATGVD_MODE_MULTI_RULE) != 0};
    g.maxDepth = opts.max_depth;
    g.budget = opts.budget;
    natgvd::parse(text);
    auto result = std::make_unique<natgvd_variants>();
    result->variants = natgvd::generateAll(natgvd::SourceUnit{"0", text, natgvd::Label::Unknown}, g);
    for (const natgvd::Variant& v : result->variants) result->provenance.push_back(provenanceJson(v));
    *out = result.release();
  });
}

void natgvd_variants_free(natgvd_variants* variants) { delete variants; }

size_t natgvd_variants_count(const natgvd_variants* variants) {
  return variants ? variants->variants.size() : 0;
}

const char* natgvd_variant_text(const natgvd_variants* variants, size_t i) {
  if (!variants || i >= variants->variants.size()) return nullptr;
  return variants->variants[i].text.c_str();
}

const char* natgvd_variant_provenance(const natgvd_variants* variants, size_t i) {
  if (!variants || i >= variants->provenance.size()) return nullptr;
  return variants->provenance[i].c_str();
}

natgvd_status natgvd_measure(const char* reference, const char* variant, natgvd_metrics* out) {
  if (!reference || !variant || !out) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const natgvd::MetricsReport r = natgvd::report(reference, variant);
    *out = natgvd_metrics{};
    out->loc = r.loc;
    out->halstead_volume = r.halsteadVolume;
    out->cyclomatic = r.cyclomaticComplexity;
    out->avg_cpg_degree = r.avgCpgDegree;
    out->edit_distance = r.editDistance;
    out->has_loc_delta = r.locDelta.has_value();
    out->has_volume_delta = r.volumeDelta.has_value();
    out->has_cyclomatic_delta = r.cyclomaticDelta.has_value();
    out->has_avg_degree_delta = r.avgDegreeDelta.has_value();
    out->loc_delta = r.locDelta.value_or(0);
    out->volume_delta = r.volumeDelta.value_or(0);
    out->cyclomatic_delta = r.cyclomaticDelta.value_or(0);
    out->avg_degree_delta = r.avgDegreeDelta.value_or(0);
  });
}

size_t natgvd_levenshtein(const char* a, size_t a_len, const char* b, size_t b_len) {
  return natgvd::levenshtein(std::string_view(a ? a : "", a ? a_len : 0),
                             std::string_view(b ? b : "", b ? b_len : 0));
}

natgvd_status natgvd_cpg_build(const char* text, natgvd_cpg** out) {
  if (!text || !out) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new natgvd_cpg{natgvd::buildCpg(natgvd::parse(text))}; });
}

void natgvd_cpg_free(natgvd_cpg* cpg) { delete cpg; }

void natgvd_cpg_get_stats(const natgvd_cpg* cpg, natgvd_cpg_stats* out) {
  if (!cpg || !out) return;
  const natgvd::Cpg& g = cpg->cpg;
  out->nodes = g.nodes().size();
  out->ast_nodes = g.astNodeCount();
  out->cfg_nodes = g.cfgNodeCount();
  out->ast_edges = g.edgeCount(natgvd::EdgeKind::Ast);
  out->cfg_edges = g.edgeCount(natgvd::EdgeKind::Cfg);
  out->duc_edges = g.edgeCount(natgvd::EdgeKind::Duc);
  out->avg_degree = g.averageDegree();
}

char* natgvd_cpg_dot(const natgvd_cpg* cpg) { return cpg ? copyString(cpg->cpg.toDot()) : nullptr; }

char* natgvd_cpg_json(const natgvd_cpg* cpg) { return cpg ? copyString(cpg->cpg.toJson()) : nullptr; }

natgvd_config* natgvd_config_new(void) { return new (std::nothrow) natgvd_config{}; }

void natgvd_config_free(natgvd_config* config) { delete config; }

natgvd_status natgvd_config_set(natgvd_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { setOption(config->config, key, value); });
}

char* natgvd_config_json(const natgvd_config* config) {
  return config ? copyString(natgvd::manifestJson(config->config, "").dump(2)) : nullptr;
}

natgvd_status natgvd_run(const char* command, const natgvd_config* config) {
  if (!command || !config) return fail(NATGVD_ERR_INVALID_ARGUMENT, "null argument");
  const std::string cmd = command;
  return guarded([&] {
    const natgvd::RunConfig& c = config->config;
    if (c.input.empty()) throw invalid("an input corpus is required");
    if (cmd == "transform") {
      natgvd::cmdTransform(c);
    } else if (cmd == "attack") {
      natgvd::cmdAttack(c);
    } else if (cmd == "metrics") {
      natgvd::cmdMetrics(c);
    } else if (cmd == "graphdiff") {
      natgvd::cmdGraphDiff(c);
    } else if (cmd == "validate") {
      natgvd::cmdValidate(c);
    } else {
      throw invalid("unknown command '" + cmd + "'");
    }
  });
}

}  // extern "C"
