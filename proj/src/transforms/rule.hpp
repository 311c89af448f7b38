#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace natgvd {

enum class TransformRule : uint8_t {
  AssignSplit,
  CompoundAssignSplit,
  WhileToFor,
  ForToWhile,
  CondNegate,
  CondSplitAnd,
  CondSplitOr,
  CondReorder,
};

inline constexpr std::array<TransformRule, 8> kAllRules = {
    TransformRule::AssignSplit, TransformRule::CompoundAssignSplit,
    TransformRule::WhileToFor,  TransformRule::ForToWhile,
    TransformRule::CondNegate,  TransformRule::CondSplitAnd,
    TransformRule::CondSplitOr, TransformRule::CondReorder,
};

// "AssignSplit", ...
std::string_view ruleName(TransformRule rule);
// Command-line spelling: "assign-split", ...
std::string_view ruleFlagName(TransformRule rule);
// Accepts either spelling.
std::optional<TransformRule> parseRule(std::string_view text);

}  // namespace natgvd
