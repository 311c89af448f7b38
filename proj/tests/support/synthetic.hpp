#pragma once

#include <string>
#include <vector>

#include "harness/corpus.hpp"

namespace natgvd::testing {

// Regex for the built-in pattern detector used with the synthetic corpus:
// a sample is "vulnerable" when it compares some name against zero with >=.
inline constexpr const char* kSyntheticPattern = "[a-z_]+ >= 0";

// 25 samples mixing four shapes: if/else guards (two rules evade), guards
// without else (one rule evades), loop guards (nothing evades), and
// non-matching or negative samples.
std::vector<CorpusRecord> syntheticCorpus();

}  // namespace natgvd::testing
