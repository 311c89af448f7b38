#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "harness/corpus.hpp"

namespace natgvd {

// Command templates run through /bin/sh. `{file}` is replaced by the quoted
// path of a C source file and `{out}` by the quoted executable path.
struct CompilerConfig {
  std::string checkCommand = "cc -fsyntax-only -w -std=gnu11 -x c {file}";
  std::string buildCommand = "cc -O0 -fwrapv -w -std=gnu11 -x c -o {out} {file}";
  std::chrono::milliseconds timeout{60000};

  // Templates for a given compiler executable (cc, gcc, clang, ...).
  static CompilerConfig forCompiler(const std::string& cc);
};

// True iff `text` compiles. When the first attempt fails, it is retried
// with `int NAME();` stubs for called functions that nothing in the unit
// declares. Throws Error(CompilerSpawnFailure) when the compiler cannot run.
bool compileCheck(const CompilerConfig& config, std::string_view text);

struct DifferentialOptions {
  size_t inputs = 256;
  uint64_t seed = 0;
  size_t arrayLength = 8;
  std::chrono::milliseconds runTimeout{10000};
};

struct DifferentialResult {
  bool equivalent = true;
  size_t inputsRun = 0;
  std::string witness;  // the first diverging input, when divergent
};

// True when the function takes only integer scalars and pointers/arrays of
// integers and returns an integer type or void.
bool driverCompatible(std::string_view text);

// Builds `original` and `variant` against the same generated driver and
// compares their output and exit status over seeded inputs (boundary
// values first). Throws Error(NotDriverCompatible | CompileFailure |
// ExecutionTimeout | CompilerSpawnFailure).
DifferentialResult differentialTest(const CompilerConfig& config, std::string_view original,
                                    std::string_view variant,
                                    const DifferentialOptions& options = {});

// Builds and runs the original once, then compares any number of variants
// against its recorded behaviour.
class DifferentialSession {
 public:
  DifferentialSession(const CompilerConfig& config, std::string_view original,
                      const DifferentialOptions& options = {});
  ~DifferentialSession();
  DifferentialSession(const DifferentialSession&) = delete;
  DifferentialSession& operator=(const DifferentialSession&) = delete;

  DifferentialResult compare(std::string_view variant) const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// The C driver program for `text` (exposed for inspection and tests).
std::string driverSource(std::string_view text, const DifferentialOptions& options);

// Writes variants as corpus records whose target is the parent's. With
// ratio < 1 a seeded subset of round(ratio * n) variants is kept in input
// order. Returns the number of records written.
size_t exportAugmentation(const std::vector<VariantRecord>& variants,
                          const std::map<int64_t, int>& parentTargets, double ratio,
                          uint64_t seed, const std::string& path);

}  // namespace natgvd
