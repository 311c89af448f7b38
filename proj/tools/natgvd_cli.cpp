// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "natgvd/natgvd.h"

namespace {

struct Options {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

void addCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.values["input"], "Corpus JSONL ({idx, func, target} per line)")
      ->required();
  cmd->add_option("--output", o.values["output"], "Output directory")->default_val("out");
  cmd->add_option("--rules", o.values["rules"], "Comma-separated rules (default: all)");
  cmd->add_option("--modes", o.values["modes"],
                  "Comma-separated modes: single, multi-location, multi-rule (default: single)");
  cmd->add_option("--max-depth", o.values["max-depth"], "Multi-rule depth (default: 2)");
  cmd->add_option("--budget", o.values["budget"], "Per-sample variant cap (default: 10000)");
  cmd->add_option("--seed", o.values["seed"], "Seed for all sampled randomness (default: 0)");
  cmd->add_option("--workers", o.values["workers"], "Worker threads (default: 1)");
  cmd->add_flag("--strict", o.flags["strict"], "Fail on empty output or validation failures");
}

void addVariantSource(CLI::App* cmd, Options& o) {
  cmd->add_option("--variants", o.values["variants"],
                  "Variants JSONL from `transform`; generated on the fly when absent");
  cmd->add_option("--baseline", o.values["baseline"], "Use a baseline instead: rename");
}

void addCompiler(CLI::App* cmd, Options& o) {
  cmd->add_option("--compiler", o.values["compiler"], "C compiler executable (default: cc)")
      ->envname("NATGVD_COMPILER");
}

int run(const std::string& command, const Options& o) {
  natgvd_config* config = natgvd_config_new();
  if (!config) {
    std::fprintf(stderr, "error: out of memory\n");
    return 2;
  }
  natgvd_status status = NATGVD_OK;
  for (const auto& [key, value] : o.values) {
    if (value.empty()) continue;
    status = natgvd_config_set(config, key.c_str(), value.c_str());
    if (status != NATGVD_OK) break;
  }
  for (const auto& [key, on] : o.flags) {
    if (status != NATGVD_OK) break;
    if (!on) continue;
    // --no-differential is the only negative flag.
    const bool negated = key == "differential";
    status = natgvd_config_set(config, key.c_str(), negated ? "false" : "true");
  }
  if (status == NATGVD_OK) status = natgvd_run(command.c_str(), config);
  natgvd_config_free(config);
  if (status != NATGVD_OK) {
    std::fprintf(stderr, "error [%s]: %s\n", natgvd_status_name(status), natgvd_last_error());
  }
  return natgvd_status_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantics-preserving transformation engine and black-box attack harness for C functions"};
  app.set_version_flag("--version", natgvd_version());
  app.require_subcommand(1);

  Options transform, attack, metrics, graphdiff, validate;

  CLI::App* t = app.add_subcommand("transform", "Generate variants of every corpus sample");
  addCommon(t, transform);
  t->add_flag("--strict-perf", transform.flags["strict-perf"],
              "Fail when throughput is below the floor");
  t->add_option("--perf-floor", transform.values["perf-floor"],
                "Throughput floor in variants/second (default: 10)");

  CLI::App* a = app.add_subcommand("attack", "Run the black-box attack against a detector");
  addCommon(a, attack);
  a->add_option("--detector", attack.values["detector"],
                "Detector command, or builtin:echo[:0|1], builtin:pattern:<regex>")
      ->envname("NATGVD_DETECTOR");
  a->add_flag("--per-sample", attack.flags["per-sample"], "Spawn the detector once per sample");
  a->add_option("--batch-size", attack.values["batch-size"], "Samples per detector batch (default: 256)");
  a->add_option("--detector-timeout-ms", attack.values["detector-timeout-ms"],
                "Per-batch detector timeout (default: 600000)");
  a->add_flag("--compile-gate", attack.flags["compile-gate"],
              "Only query variants that compile");
  addCompiler(a, attack);
  a->add_option("--augment-ratio", attack.values["augment-ratio"],
                "Export this fraction of evading variants to augmentation.jsonl");

  CLI::App* m = app.add_subcommand("metrics", "Complexity metrics of variants against their parents");
  addCommon(m, metrics);
  addVariantSource(m, metrics);

  CLI::App* g = app.add_subcommand("graphdiff", "Code property graph deltas of variants");
  addCommon(g, graphdiff);
  addVariantSource(g, graphdiff);
  g->add_flag("--export-graphs", graphdiff.flags["export-graphs"],
              "Write DOT and JSON graphs under graphs/");

  CLI::App* v = app.add_subcommand("validate", "Compile and differential-test variants");
  addCommon(v, validate);
  addVariantSource(v, validate);
  addCompiler(v, validate);
  v->add_flag("--no-differential", validate.flags["differential"], "Only compile-check");
  v->add_option("--diff-inputs", validate.values["diff-inputs"],
                "Sampled inputs per differential test (default: 256)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (t->parsed()) return run("transform", transform);
  if (a->parsed()) return run("attack", attack);
  if (m->parsed()) return run("metrics", metrics);
  if (g->parsed()) return run("graphdiff", graphdiff);
  return run("validate", validate);
}
