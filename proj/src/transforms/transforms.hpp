#pragma once

#include <string>
#include <vector>

#include "analysis/analysis.hpp"
#include "parser/rewrite.hpp"

namespace natgvd {

struct RewritePlan {
  std::vector<Edit> edits;
  // Human-readable summary of the rewritten site.
  std::string description;
  // A comment inside a rewritten region could not be carried over.
  bool commentDropped = false;
};

// Each throws Error(Inapplicable) when constraintsValid fails for the site.
RewritePlan applyAssignSplit(const Ast& ast, const Site& site);
RewritePlan applyCompoundAssignSplit(const Ast& ast, const Site& site);
RewritePlan applyWhileToFor(const Ast& ast, const Site& site);
RewritePlan applyForToWhile(const Ast& ast, const Site& site);
RewritePlan applyCondNegate(const Ast& ast, const Site& site);
RewritePlan applyCondSplitAnd(const Ast& ast, const Site& site);
RewritePlan applyCondSplitOr(const Ast& ast, const Site& site);
RewritePlan applyCondReorder(const Ast& ast, const Site& site);

RewritePlan applyRule(const Ast& ast, const Site& site);

// Convenience: the rewritten source text.
std::string applyToText(const Ast& ast, const Site& site);

}  // namespace natgvd
