#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "common/error.hpp"
#include "cpg/cpg.hpp"
#include "harness/attack.hpp"
#include "harness/corpus.hpp"
#include "harness/detector.hpp"
#include "harness/validation.hpp"
#include "metrics/metrics.hpp"
#include "metrics/rename_baseline.hpp"
#include "parser/parser.hpp"

namespace natgvd {

namespace {

using Clock = std::chrono::steady_clock;

// Runs fn over items on up to `workers` threads; results keep item order and
// the first exception (in item order) is rethrown.
template <typename T, typename F>
auto parallelMap(const std::vector<T>& items, size_t workers, F fn) {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<size_t> next{0};
  auto loop = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t n = std::min(std::max<size_t>(workers, 1), items.size());
  if (n <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < n; ++i) pool.emplace_back(loop);
    for (std::thread& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : path_(path.empty() ? "." : path) {
    std::error_code ec;
    std::filesystem::create_directories(path_, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create output directory " + path_);
  }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

  std::ofstream open(const std::string& name) const {
    std::ofstream f(file(name), std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + file(name));
    return f;
  }
  void writeJson(const std::string& name, const nlohmann::json& j) const {
    std::ofstream f = open(name);
    f << j.dump(2) << '\n';
    if (!f) throw Error(ErrorCode::Io, "cannot write " + file(name));
  }

 private:
  std::string path_;
};

int64_t maxCorpusIdx(const std::string& path) {
  JsonlReader reader(path);
  int64_t best = -1;
  while (auto line = reader.next()) {
    try {
      best = std::max(best, parseCorpusLine(*line).idx);
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(reader.lineNumber()) + ": " + e.what());
    }
  }
  return best;
}

GenerationConfig generationConfig(const RunConfig& c) {
  GenerationConfig g;
  g.enabledRules = c.rules;
  g.maxDepth = c.maxDepth;
  g.modes = c.modes;
  g.budget = c.budget;
  return g;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

nlohmann::json optJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

struct Mean {
  double sum = 0;
  size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  void add(const std::optional<double>& v) {
    if (v) add(*v);
  }
  nlohmann::json json() const { return n ? nlohmann::json(sum / static_cast<double>(n)) : nlohmann::json(nullptr); }
};

// ---------------------------------------------------------------------------
// Parent/variant grouping shared by metrics, graphdiff and validate.

struct Group {
  CorpusRecord parent;
  bool hasGiven = false;  // variants come from a file
  std::vector<VariantRecord> given;
};

class GroupReader {
 public:
  explicit GroupReader(const RunConfig& config) : corpus_(config.input) {
    if (!config.variants.empty()) variants_.emplace(config.variants);
  }

  std::vector<Group> nextChunk(size_t n) {
    std::vector<Group> out;
    while (out.size() < n) {
      auto g = nextGroup();
      if (!g) break;
      out.push_back(std::move(*g));
    }
    if (out.empty() && pending_) {
      throw Error(ErrorCode::MalformedInput,
                  "variant " + std::to_string(pending_->idx) + " refers to parent " +
                      std::to_string(pending_->parentIdx) +
                      " which is missing from the corpus or out of order");
    }
    return out;
  }

 private:
  std::optional<Group> nextGroup() {
    auto line = corpus_.next();
    if (!line) return std::nullopt;
    Group g;
    try {
      g.parent = parseCorpusLine(*line);
    } catch (const Error& e) {
      throw Error(e.code(), corpus_.path() + ":" + std::to_string(corpus_.lineNumber()) + ": " + e.what());
    }
    if (!variants_) return g;
    g.hasGiven = true;
    while (true) {
      if (!pending_) {
        auto vline = variants_->next();
        if (!vline) break;
        try {
          pending_ = parseVariantLine(*vline);
        } catch (const Error& e) {
          throw Error(e.code(), variants_->path() + ":" + std::to_string(variants_->lineNumber()) +
                                    ": " + e.what());
        }
      }
      if (pending_->parentIdx != g.parent.idx) break;
      g.given.push_back(std::move(*pending_));
      pending_.reset();
    }
    return g;
  }

  JsonlReader corpus_;
  std::optional<JsonlReader> variants_;
  std::optional<VariantRecord> pending_;
};

struct Resolved {
  CorpusRecord parent;
  std::optional<std::string> parseError;  // error code name
  bool budgetExceeded = false;
  GenerationStats stats;
  std::vector<VariantRecord> variants;  // idx < 0 until numbered
};

Resolved resolve(const Group& g, const RunConfig& config) {
  Resolved r;
  r.parent = g.parent;
  if (g.hasGiven) {
    r.variants = g.given;
    return r;
  }
  try {
    parse(g.parent.func);
  } catch (const Error& e) {
    r.parseError = std::string(errorCodeName(e.code()));
    return r;
  }
  if (config.baseline == "rename") {
    std::string text = renameBaseline(g.parent.func);
    if (text != g.parent.func) {
      r.variants.push_back(VariantRecord{-1, g.parent.idx, {}, {}, std::move(text)});
    }
    return r;
  }
  const SourceUnit unit{std::to_string(g.parent.idx), g.parent.func, Label::Unknown};
  try {
    for (const Variant& v : generateAll(unit, generationConfig(config), &r.stats)) {
      r.variants.push_back(toRecord(v, -1, g.parent.idx));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    r.budgetExceeded = true;
    r.variants.clear();
  }
  return r;
}

// Streams the corpus in chunks, resolves each group's variants and applies
// `work` to them in parallel, then hands results to `sink` in input order
// with fresh variant idx values assigned.
template <typename Work, typename Sink>
void forEachGroup(const RunConfig& config, Work work, Sink sink) {
  int64_t nextIdx = config.variants.empty() ? maxCorpusIdx(config.input) + 1 : 0;
  GroupReader reader(config);
  const size_t chunk = std::max<size_t>(config.workers, 1) * 16;
  while (true) {
    std::vector<Group> groups = reader.nextChunk(chunk);
    if (groups.empty()) break;
    auto processed = parallelMap(groups, config.workers, [&](const Group& g) {
      Resolved r = resolve(g, config);
      auto rows = work(r);
      return std::make_pair(std::move(r), std::move(rows));
    });
    for (auto& [r, rows] : processed) {
      for (VariantRecord& v : r.variants) {
        if (v.idx < 0) v.idx = nextIdx++;
      }
      sink(r, rows);
    }
  }
}

struct GroupCounters {
  size_t samples = 0, parsed = 0, budgetExceeded = 0, variants = 0;
  std::map<std::string, size_t> parseErrors;

  void add(const Resolved& r) {
    ++samples;
    if (r.parseError) {
      ++parseErrors[*r.parseError];
    } else {
      ++parsed;
    }
    budgetExceeded += r.budgetExceeded ? 1 : 0;
    variants += r.variants.size();
  }
  nlohmann::json json() const {
    return {{"samples", samples},
            {"parsed", parsed},
            {"parse_errors", parseErrors},
            {"budget_exceeded", budgetExceeded},
            {"variants", variants}};
  }
};

nlohmann::json rulesJson(const std::vector<TransformRule>& rules) {
  nlohmann::json j = nlohmann::json::array();
  for (TransformRule r : rules) j.push_back(std::string(ruleName(r)));
  return j;
}

void reportTiming(const OutputDir& out, const std::string& command, double seconds, size_t variants) {
  const double rate = seconds > 0 ? static_cast<double>(variants) / seconds : 0.0;
  out.writeJson("timing.json", {{"command", command},
                                {"seconds", seconds},
                                {"variants", variants},
                                {"variants_per_second", rate}});
  std::fprintf(stderr, "%s: %zu variants in %.3f s (%.1f variants/s)\n", command.c_str(), variants,
               seconds, rate);
}

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

nlohmann::json manifestJson(const RunConfig& c, const std::string& command) {
  nlohmann::json rules = nlohmann::json::array();
  for (TransformRule r : c.rules) rules.push_back(std::string(ruleFlagName(r)));
  nlohmann::json modes = nlohmann::json::array();
  if (c.modes.single) modes.push_back("single");
  if (c.modes.multiLocation) modes.push_back("multi-location");
  if (c.modes.multiRule) modes.push_back("multi-rule");
  return {{"command", command},
          {"input", c.input},
          {"output", c.output},
          {"variants", c.variants},
          {"baseline", c.baseline},
          {"rules", rules},
          {"modes", modes},
          {"max_depth", c.maxDepth},
          {"budget", c.budget},
          {"detector", c.detector},
          {"per_sample", c.perSample},
          {"batch_size", c.batchSize},
          {"detector_timeout_ms", c.detectorTimeoutMs},
          {"compiler", c.compiler},
          {"compile_gate", c.compileGate},
          {"differential", c.differential},
          {"diff_inputs", c.diffInputs},
          {"augment_ratio", c.augmentRatio},
          {"export_graphs", c.exportGraphs},
          {"seed", c.seed},
          {"workers", c.workers},
          {"strict", c.strict},
          {"strict_perf", c.strictPerf},
          {"perf_floor", c.perfFloor}};
}

// ---------------------------------------------------------------------------

void cmdTransform(const RunConfig& config) {
  const auto start = Clock::now();
  const OutputDir out(config.output);
  out.writeJson("run-manifest.json", manifestJson(config, "transform"));
  std::ofstream variantsOut = out.open("variants.jsonl");

  GroupCounters counters;
  GenerationStats gen;
  size_t applicable = 0;
  std::map<TransformRule, size_t> ruleSamples;
  std::map<size_t, size_t> byDepth;
  RunConfig generated = config;
  generated.variants.clear();
  generated.baseline.clear();
  forEachGroup(
      generated, [](const Resolved&) { return 0; },
      [&](const Resolved& r, int) {
        counters.add(r);
        gen.sitesConsidered += r.stats.sitesConsidered;
        gen.sitesValid += r.stats.sitesValid;
        gen.reparseFailures += r.stats.reparseFailures;
        applicable += r.variants.empty() ? 0 : 1;
        std::set<TransformRule> rules;
        for (const VariantRecord& v : r.variants) {
          variantsOut << toJson(v).dump() << '\n';
          if (v.rules.size() == 1) rules.insert(v.rules.front());
          ++byDepth[v.rules.size()];
        }
        for (TransformRule rule : rules) ++ruleSamples[rule];
      });
  variantsOut.flush();
  if (!variantsOut) throw Error(ErrorCode::Io, "cannot write variants.jsonl");

  const double parsed = static_cast<double>(counters.parsed);
  nlohmann::json stats = counters.json();
  stats["parse_rate"] = counters.samples ? parsed / static_cast<double>(counters.samples) : 0.0;
  stats["applicable_samples"] = applicable;
  stats["applicability_rate"] = counters.parsed ? static_cast<double>(applicable) / parsed : 0.0;
  nlohmann::json perRule = nlohmann::json::object();
  for (TransformRule rule : config.rules) {
    const size_t n = ruleSamples[rule];
    perRule[std::string(ruleName(rule))] = {
        {"samples", n}, {"rate", counters.parsed ? static_cast<double>(n) / parsed : 0.0}};
  }
  stats["rule_applicability"] = perRule;
  nlohmann::json depth = nlohmann::json::object();
  for (auto [d, n] : byDepth) depth[std::to_string(d)] = n;
  stats["variants_by_depth"] = depth;
  stats["sites_considered"] = gen.sitesConsidered;
  stats["sites_valid"] = gen.sitesValid;
  stats["reparse_failures"] = gen.reparseFailures;
  out.writeJson("stats.json", stats);

  const double seconds = secondsSince(start);
  reportTiming(out, "transform", seconds, counters.variants);
  if (config.strict && counters.variants == 0) {
    throw Error(ErrorCode::StrictCheckFailed, "no variants were generated");
  }
  const double rate = seconds > 0 ? static_cast<double>(counters.variants) / seconds : 0.0;
  if (counters.variants > 0 && rate < config.perfFloor) {
    const std::string msg = "throughput " + fmt(rate) + " variants/s is below the floor of " +
                            fmt(config.perfFloor);
    if (config.strictPerf) throw Error(ErrorCode::StrictCheckFailed, msg);
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  }
}

// ---------------------------------------------------------------------------

void cmdAttack(const RunConfig& config) {
  if (config.detector.empty()) {
    throw Error(ErrorCode::InvalidArgument, "attack needs a detector command");
  }
  const auto start = Clock::now();
  const OutputDir out(config.output);
  out.writeJson("run-manifest.json", manifestJson(config, "attack"));
  std::ofstream log = out.open("verdicts.jsonl");
  std::unique_ptr<Detector> detector =
      makeDetector(config.detector, std::chrono::milliseconds(config.detectorTimeoutMs),
                   config.perSample);
  const CompilerConfig compiler = CompilerConfig::forCompiler(config.compiler);

  const size_t batch = std::max<size_t>(config.batchSize, 1);
  auto queryAll = [&](const std::vector<DetectorRequest>& requests) {
    std::vector<std::vector<DetectorRequest>> chunks;
    for (size_t i = 0; i < requests.size(); i += batch) {
      chunks.emplace_back(requests.begin() + static_cast<std::ptrdiff_t>(i),
                          requests.begin() + static_cast<std::ptrdiff_t>(std::min(requests.size(), i + batch)));
    }
    std::vector<DetectorVerdict> verdicts;
    for (auto& part : parallelMap(chunks, config.workers, [&](const auto& c) { return detector->query(c); })) {
      verdicts.insert(verdicts.end(), part.begin(), part.end());
    }
    return verdicts;
  };

  AttackReport report;
  GroupCounters counters;
  std::vector<VariantRecord> evading;
  std::map<int64_t, int> targets;
  int64_t nextIdx = maxCorpusIdx(config.input) + 1;
  RunConfig generated = config;
  generated.variants.clear();
  generated.baseline.clear();

  JsonlReader reader(config.input);
  while (true) {
    std::vector<CorpusRecord> records;
    while (records.size() < batch) {
      auto line = reader.next();
      if (!line) break;
      try {
        records.push_back(parseCorpusLine(*line));
      } catch (const Error& e) {
        throw Error(e.code(), config.input + ":" + std::to_string(reader.lineNumber()) + ": " + e.what());
      }
    }
    if (records.empty()) break;
    report.corpusSize += records.size();

    std::vector<DetectorRequest> originals;
    for (const CorpusRecord& r : records) originals.push_back({r.idx, r.func});
    const std::vector<DetectorVerdict> verdicts = queryAll(originals);
    for (size_t i = 0; i < records.size(); ++i) {
      log << nlohmann::json{{"kind", "original"},
                            {"idx", records[i].idx},
                            {"target", records[i].target},
                            {"label", verdicts[i].label}}
                 .dump()
          << '\n';
    }

    std::vector<Group> groups;
    for (CorpusRecord& r : selectTruePositives(records, verdicts)) groups.push_back({std::move(r), false, {}});
    struct Prepared {
      Resolved r;
      std::vector<size_t> distances;
      size_t rejected = 0;
    };
    auto prepared = parallelMap(groups, config.workers, [&](const Group& g) {
      Prepared p;
      p.r = resolve(g, generated);
      if (config.compileGate) {
        std::vector<VariantRecord> kept;
        for (VariantRecord& v : p.r.variants) {
          if (compileCheck(compiler, v.func)) kept.push_back(std::move(v));
        }
        p.rejected = p.r.variants.size() - kept.size();
        p.r.variants = std::move(kept);
      }
      if (!p.r.parseError) {
        const Ast parent = parse(p.r.parent.func);
        for (const VariantRecord& v : p.r.variants) {
          p.distances.push_back(levenshtein(parent.functionText(), parse(v.func).functionText()));
        }
      }
      return p;
    });

    std::vector<DetectorRequest> requests;
    for (Prepared& p : prepared) {
      for (VariantRecord& v : p.r.variants) {
        v.idx = nextIdx++;
        requests.push_back({v.idx, v.func});
      }
    }
    const std::vector<DetectorVerdict> variantVerdicts = queryAll(requests);
    size_t k = 0;
    for (Prepared& p : prepared) {
      const Resolved& r = p.r;
      const std::vector<size_t>& distances = p.distances;
      counters.add(r);
      report.variantsRejected += p.rejected;
      targets[r.parent.idx] = r.parent.target;
      SampleOutcome sample{r.parent.idx, {}};
      for (size_t i = 0; i < r.variants.size(); ++i, ++k) {
        const VariantRecord& v = r.variants[i];
        VariantOutcome o{v.idx, v.rules, v.sites, distances[i], variantVerdicts[k].label};
        nlohmann::json rules = rulesJson(v.rules);
        log << nlohmann::json{{"kind", "variant"},
                              {"idx", v.idx},
                              {"parent_idx", v.parentIdx},
                              {"rules", rules},
                              {"sites", v.sites},
                              {"edit_distance", o.editDistance},
                              {"label", o.label}}
                   .dump()
            << '\n';
        if (o.evaded()) evading.push_back(v);
        sample.variants.push_back(std::move(o));
      }
      report.samples.push_back(std::move(sample));
    }
  }
  log.flush();
  if (!log) throw Error(ErrorCode::Io, "cannot write verdicts.jsonl");

  if (report.samples.empty()) {
    throw Error(ErrorCode::NoTruePositives,
                "the detector labels no ground-truth vulnerable sample as vulnerable; nothing to attack");
  }
  nlohmann::json json = reportJson(report);
  json["parse_errors"] = counters.parseErrors;
  json["budget_exceeded"] = counters.budgetExceeded;
  out.writeJson("report.json", json);
  {
    std::ofstream text = out.open("report.txt");
    text << reportText(report);
  }
  if (config.augmentRatio >= 0) {
    const size_t n = exportAugmentation(evading, targets, config.augmentRatio, config.seed,
                                        out.file("augmentation.jsonl"));
    if (evading.empty()) std::fprintf(stderr, "warning: no evading variants to export\n");
    std::fprintf(stderr, "attack: exported %zu augmentation records\n", n);
  }
  std::fprintf(stderr, "attack: %zu true positives, evasion rate %.4f\n", report.samples.size(),
               evasionRate(report));
  reportTiming(out, "attack", secondsSince(start), counters.variants);
}

// ---------------------------------------------------------------------------

namespace {

struct MetricsRow {
  std::optional<MetricsReport> report;
  std::string error;
};

}  // namespace

void cmdMetrics(const RunConfig& config) {
  const auto start = Clock::now();
  const OutputDir out(config.output);
  out.writeJson("run-manifest.json", manifestJson(config, "metrics"));
  std::ofstream csv = out.open("metrics.csv");
  csv << "idx,parent_idx,loc,volume,cyclomatic,avg_degree,edit_distance,"
         "loc_delta,volume_delta,cyclomatic_delta,avg_degree_delta\n";

  GroupCounters counters;
  Mean loc_, volume, cyclo, degree, distance, dLoc, dVolume, dCyclo, dDegree;
  std::vector<size_t> distances;
  size_t failures = 0;
  forEachGroup(
      config,
      [](const Resolved& r) {
        std::vector<MetricsRow> rows;
        for (const VariantRecord& v : r.variants) {
          MetricsRow row;
          try {
            row.report = report(r.parent.func, v.func);
          } catch (const Error& e) {
            row.error = std::string(errorCodeName(e.code())) + ": " + e.what();
          }
          rows.push_back(std::move(row));
        }
        return rows;
      },
      [&](const Resolved& r, const std::vector<MetricsRow>& rows) {
        counters.add(r);
        for (size_t i = 0; i < rows.size(); ++i) {
          const VariantRecord& v = r.variants[i];
          if (!rows[i].report) {
            ++failures;
            std::fprintf(stderr, "metrics: variant %lld skipped (%s)\n",
                         static_cast<long long>(v.idx), rows[i].error.c_str());
            continue;
          }
          const MetricsReport& m = *rows[i].report;
          csv << v.idx << ',' << v.parentIdx << ',' << m.loc << ',' << fmt(m.halsteadVolume) << ','
              << m.cyclomaticComplexity << ',' << fmt(m.avgCpgDegree) << ',' << m.editDistance
              << ',' << fmt(m.locDelta) << ',' << fmt(m.volumeDelta) << ','
              << fmt(m.cyclomaticDelta) << ',' << fmt(m.avgDegreeDelta) << '\n';
          loc_.add(static_cast<double>(m.loc));
          volume.add(m.halsteadVolume);
          cyclo.add(m.cyclomaticComplexity);
          degree.add(m.avgCpgDegree);
          distance.add(static_cast<double>(m.editDistance));
          distances.push_back(m.editDistance);
          dLoc.add(m.locDelta);
          dVolume.add(m.volumeDelta);
          dCyclo.add(m.cyclomaticDelta);
          dDegree.add(m.avgDegreeDelta);
        }
      });
  csv.flush();
  if (!csv) throw Error(ErrorCode::Io, "cannot write metrics.csv");

  nlohmann::json median = nullptr;
  if (!distances.empty()) {
    std::sort(distances.begin(), distances.end());
    const size_t n = distances.size();
    median = n % 2 ? static_cast<double>(distances[n / 2])
                   : (static_cast<double>(distances[n / 2 - 1]) + static_cast<double>(distances[n / 2])) / 2.0;
  }
  nlohmann::json summary = counters.json();
  summary["measured"] = distance.n;
  summary["failures"] = failures;
  summary["mean"] = {{"loc", loc_.json()},
                     {"volume", volume.json()},
                     {"cyclomatic", cyclo.json()},
                     {"avg_degree", degree.json()},
                     {"edit_distance", distance.json()}};
  summary["median_edit_distance"] = median;
  summary["mean_percent_delta"] = {{"loc", dLoc.json()},
                                   {"volume", dVolume.json()},
                                   {"cyclomatic", dCyclo.json()},
                                   {"avg_degree", dDegree.json()}};
  out.writeJson("summary.json", summary);
  reportTiming(out, "metrics", secondsSince(start), counters.variants);
  if (config.strict && failures > 0) {
    throw Error(ErrorCode::StrictCheckFailed, std::to_string(failures) + " variants could not be measured");
  }
}

// ---------------------------------------------------------------------------

namespace {

struct GraphRow {
  std::optional<GraphDelta> delta;
  std::string error;
  std::string dot, json;  // variant graph exports
};

nlohmann::json deltaJson(const GraphDelta& d) {
  return {{"nodes_delta", d.nodeDelta()},
          {"ast_nodes_delta", d.astNodeDelta()},
          {"cfg_nodes_delta", d.cfgNodeDelta()},
          {"ast_edges_delta", d.astEdgeDelta()},
          {"cfg_edges_delta", d.cfgEdgeDelta()},
          {"duc_edges_delta", d.ducEdgeDelta()},
          {"avg_degree_before", d.avgDegreeBefore},
          {"avg_degree_after", d.avgDegreeAfter},
          {"avg_degree_percent", optJson(d.avgDegreePercent())}};
}

}  // namespace

void cmdGraphDiff(const RunConfig& config) {
  const auto start = Clock::now();
  const OutputDir out(config.output);
  out.writeJson("run-manifest.json", manifestJson(config, "graphdiff"));
  std::ofstream rowsOut = out.open("graphdiff.jsonl");
  std::optional<OutputDir> graphs;
  if (config.exportGraphs) graphs.emplace(out.file("graphs"));

  GroupCounters counters;
  Mean nodes, astNodes, cfgNodes, astEdges, cfgEdges, ducEdges, percent;
  size_t failures = 0;
  forEachGroup(
      config,
      [&](const Resolved& r) {
        std::vector<GraphRow> rows;
        std::optional<Cpg> parent;
        for (const VariantRecord& v : r.variants) {
          GraphRow row;
          try {
            if (!parent) parent = buildCpg(parse(r.parent.func));
            const Cpg after = buildCpg(parse(v.func));
            row.delta = graphDiff(*parent, after);
            if (config.exportGraphs) {
              row.dot = after.toDot();
              row.json = after.toJson();
            }
          } catch (const Error& e) {
            row.error = std::string(errorCodeName(e.code())) + ": " + e.what();
          }
          rows.push_back(std::move(row));
        }
        return rows;
      },
      [&](const Resolved& r, const std::vector<GraphRow>& rows) {
        counters.add(r);
        if (graphs && !r.variants.empty()) {
          try {
            const Cpg parent = buildCpg(parse(r.parent.func));
            std::ofstream(graphs->file(std::to_string(r.parent.idx) + ".dot")) << parent.toDot();
            std::ofstream(graphs->file(std::to_string(r.parent.idx) + ".json")) << parent.toJson() << '\n';
          } catch (const Error&) {
          }
        }
        for (size_t i = 0; i < rows.size(); ++i) {
          const VariantRecord& v = r.variants[i];
          if (!rows[i].delta) {
            ++failures;
            std::fprintf(stderr, "graphdiff: variant %lld skipped (%s)\n",
                         static_cast<long long>(v.idx), rows[i].error.c_str());
            continue;
          }
          const GraphDelta& d = *rows[i].delta;
          nlohmann::json j = {{"idx", v.idx}, {"parent_idx", v.parentIdx}};
          j.update(deltaJson(d));
          rowsOut << j.dump() << '\n';
          nodes.add(static_cast<double>(d.nodeDelta()));
          astNodes.add(static_cast<double>(d.astNodeDelta()));
          cfgNodes.add(static_cast<double>(d.cfgNodeDelta()));
          astEdges.add(static_cast<double>(d.astEdgeDelta()));
          cfgEdges.add(static_cast<double>(d.cfgEdgeDelta()));
          ducEdges.add(static_cast<double>(d.ducEdgeDelta()));
          percent.add(d.avgDegreePercent());
          if (graphs) {
            std::ofstream(graphs->file(std::to_string(v.idx) + ".dot")) << rows[i].dot;
            std::ofstream(graphs->file(std::to_string(v.idx) + ".json")) << rows[i].json << '\n';
          }
        }
      });
  rowsOut.flush();
  if (!rowsOut) throw Error(ErrorCode::Io, "cannot write graphdiff.jsonl");
  nlohmann::json summary = counters.json();
  summary["measured"] = nodes.n;
  summary["failures"] = failures;
  summary["mean"] = {{"nodes_delta", nodes.json()},
                     {"ast_nodes_delta", astNodes.json()},
                     {"cfg_nodes_delta", cfgNodes.json()},
                     {"ast_edges_delta", astEdges.json()},
                     {"cfg_edges_delta", cfgEdges.json()},
                     {"duc_edges_delta", ducEdges.json()},
                     {"avg_degree_percent", percent.json()}};
  out.writeJson("summary.json", summary);
  reportTiming(out, "graphdiff", secondsSince(start), counters.variants);
  if (config.strict && failures > 0) {
    throw Error(ErrorCode::StrictCheckFailed, std::to_string(failures) + " variants could not be graphed");
  }
}

// ---------------------------------------------------------------------------

namespace {

struct ValidationRow {
  bool compiled = false;
  std::string differential;  // equivalent, divergent, skipped, error
  std::string detail;
  size_t inputs = 0;
};

}  // namespace

void cmdValidate(const RunConfig& config) {
  const auto start = Clock::now();
  const OutputDir out(config.output);
  out.writeJson("run-manifest.json", manifestJson(config, "validate"));
  std::ofstream rowsOut = out.open("validation.jsonl");
  const CompilerConfig compiler = CompilerConfig::forCompiler(config.compiler);
  DifferentialOptions diff;
  diff.inputs = config.diffInputs;
  diff.seed = config.seed;

  GroupCounters counters;
  size_t compiled = 0, equivalent = 0, divergent = 0, skipped = 0, errors = 0, parentFailures = 0;
  forEachGroup(
      config,
      [&](const Resolved& r) {
        std::vector<ValidationRow> rows;
        if (r.variants.empty()) return std::make_pair(true, rows);
        const bool parentCompiles = compileCheck(compiler, r.parent.func);
        std::optional<DifferentialSession> session;
        std::string sessionError;
        if (config.differential && driverCompatible(r.parent.func)) {
          try {
            session.emplace(compiler, r.parent.func, diff);
          } catch (const Error& e) {
            sessionError = std::string(errorCodeName(e.code())) + ": " + e.what();
          }
        }
        for (const VariantRecord& v : r.variants) {
          ValidationRow row;
          row.compiled = compileCheck(compiler, v.func);
          if (!sessionError.empty()) {
            row.differential = "error";
            row.detail = sessionError;
          } else if (!session) {
            row.differential = "skipped";
          } else {
            try {
              const DifferentialResult res = session->compare(v.func);
              row.differential = res.equivalent ? "equivalent" : "divergent";
              row.detail = res.witness;
              row.inputs = res.inputsRun;
            } catch (const Error& e) {
              row.differential = "error";
              row.detail = std::string(errorCodeName(e.code())) + ": " + e.what();
            }
          }
          rows.push_back(std::move(row));
        }
        return std::make_pair(parentCompiles, rows);
      },
      [&](const Resolved& r, const std::pair<bool, std::vector<ValidationRow>>& result) {
        counters.add(r);
        const auto& [parentCompiles, rows] = result;
        parentFailures += parentCompiles ? 0 : 1;
        for (size_t i = 0; i < rows.size(); ++i) {
          const VariantRecord& v = r.variants[i];
          const ValidationRow& row = rows[i];
          compiled += row.compiled ? 1 : 0;
          equivalent += row.differential == "equivalent" ? 1 : 0;
          divergent += row.differential == "divergent" ? 1 : 0;
          skipped += row.differential == "skipped" ? 1 : 0;
          errors += row.differential == "error" ? 1 : 0;
          nlohmann::json j = {{"idx", v.idx},
                              {"parent_idx", v.parentIdx},
                              {"rules", rulesJson(v.rules)},
                              {"compiled", row.compiled},
                              {"differential", row.differential},
                              {"inputs", row.inputs}};
          if (!row.detail.empty()) j["detail"] = row.detail;
          rowsOut << j.dump() << '\n';
        }
      });
  rowsOut.flush();
  if (!rowsOut) throw Error(ErrorCode::Io, "cannot write validation.jsonl");
  const size_t total = counters.variants;
  const size_t tested = equivalent + divergent;
  nlohmann::json summary = counters.json();
  summary["parents_not_compiling"] = parentFailures;
  summary["compiled"] = compiled;
  summary["compile_rate"] = total ? static_cast<double>(compiled) / static_cast<double>(total) : 1.0;
  summary["differential_tested"] = tested;
  summary["equivalent"] = equivalent;
  summary["divergent"] = divergent;
  summary["skipped"] = skipped;
  summary["errors"] = errors;
  summary["equivalence_rate"] = tested ? static_cast<double>(equivalent) / static_cast<double>(tested) : 1.0;
  out.writeJson("validation.json", summary);
  std::fprintf(stderr, "validate: %zu/%zu compile, %zu/%zu equivalent, %zu skipped, %zu errors\n",
               compiled, total, equivalent, tested, skipped, errors);
  reportTiming(out, "validate", secondsSince(start), total);
  if (config.strict && (compiled != total || divergent > 0 || errors > 0)) {
    throw Error(ErrorCode::StrictCheckFailed, "validation failed");
  }
}

}  // namespace natgvd
