#include "transforms/rule.hpp"

namespace natgvd {

std::string_view ruleName(TransformRule rule) {
  switch (rule) {
    case TransformRule::AssignSplit: return "AssignSplit";
    case TransformRule::CompoundAssignSplit: return "CompoundAssignSplit";
    case TransformRule::WhileToFor: return "WhileToFor";
    case TransformRule::ForToWhile: return "ForToWhile";
    case TransformRule::CondNegate: return "CondNegate";
    case TransformRule::CondSplitAnd: return "CondSplitAnd";
    case TransformRule::CondSplitOr: return "CondSplitOr";
    case TransformRule::CondReorder: return "CondReorder";
  }
  return "?";
}

std::string_view ruleFlagName(TransformRule rule) {
  switch (rule) {
    case TransformRule::AssignSplit: return "assign-split";
    case TransformRule::CompoundAssignSplit: return "compound-assign-split";
    case TransformRule::WhileToFor: return "while-to-for";
    case TransformRule::ForToWhile: return "for-to-while";
    case TransformRule::CondNegate: return "cond-negate";
    case TransformRule::CondSplitAnd: return "cond-split-and";
    case TransformRule::CondSplitOr: return "cond-split-or";
    case TransformRule::CondReorder: return "cond-reorder";
  }
  return "?";
}

std::optional<TransformRule> parseRule(std::string_view text) {
  for (TransformRule r : kAllRules) {
    if (text == ruleName(r) || text == ruleFlagName(r)) return r;
  }
  return std::nullopt;
}

}  // namespace natgvd
