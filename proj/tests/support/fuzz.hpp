#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace natgvd::testing {

// Random, syntactically valid C function definitions in the supported
// subset, with random layout, comments and an occasional preamble.
class FunctionFuzzer {
 public:
  explicit FunctionFuzzer(uint64_t seed) : rng_(seed) {}

  std::string next();

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(int percent) { return pick(100) < percent; }

  std::string ws();
  std::string sp();
  std::string var();
  std::string literal();
  std::string expr(int depth);
  std::string lvalue();
  std::string stmt(int depth, bool inLoop, bool inSwitch);
  std::string block(int depth, bool inLoop, bool inSwitch);
  std::string decl();

  std::mt19937_64 rng_;
  std::string indent_;
  int labels_ = 0;
  bool typedefs_ = false;
};

}  // namespace natgvd::testing
