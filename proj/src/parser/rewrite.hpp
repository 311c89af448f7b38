#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "parser/lexer.hpp"

namespace natgvd {

struct Edit {
  Span span;
  std::string replacement;
};

// Applies pairwise non-overlapping edits in any order. Zero-width edits at the
// same offset are inserted in list order. Throws Error(OverlappingEdits) or
// Error(SpanOutOfBounds).
std::string rewrite(std::string_view text, std::vector<Edit> edits);

// Offset in the rewritten text of the byte that sat at `offset` in the
// original. Insertions exactly at `offset` do not move it.
uint32_t mapOffset(uint32_t offset, const std::vector<Edit>& edits);

}  // namespace natgvd
