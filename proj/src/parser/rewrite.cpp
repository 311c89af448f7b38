#include "parser/rewrite.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace natgvd {

std::string rewrite(std::string_view text, std::vector<Edit> edits) {
  for (const Edit& e : edits) {
    if (e.span.begin > e.span.end || e.span.end > text.size()) {
      throw Error(ErrorCode::SpanOutOfBounds,
                  "edit [" + std::to_string(e.span.begin) + ", " +
                      std::to_string(e.span.end) + ") exceeds text of " +
                      std::to_string(text.size()) + " bytes");
    }
  }
  std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    // An insertion sorts before a replacement starting at the same byte.
    return a.span.empty() && !b.span.empty();
  });
  for (size_t i = 1; i < edits.size(); ++i) {
    const Span prev = edits[i - 1].span;
    const Span cur = edits[i].span;
    if (cur.begin < prev.end ||
        (!prev.empty() && !cur.empty() && cur.begin == prev.begin)) {
      throw Error(ErrorCode::OverlappingEdits,
                  "edits [" + std::to_string(prev.begin) + ", " +
                      std::to_string(prev.end) + ") and [" +
                      std::to_string(cur.begin) + ", " +
                      std::to_string(cur.end) + ") overlap");
    }
  }
  std::string out;
  size_t growth = 0;
  for (const Edit& e : edits) growth += e.replacement.size();
  out.reserve(text.size() + growth);
  uint32_t at = 0;
  for (const Edit& e : edits) {
    out.append(text.substr(at, e.span.begin - at));
    out.append(e.replacement);
    at = e.span.end;
  }
  out.append(text.substr(at));
  return out;
}

uint32_t mapOffset(uint32_t offset, const std::vector<Edit>& edits) {
  int64_t shift = 0;
  for (const Edit& e : edits) {
    if (e.span.end <= offset && !(e.span.empty() && e.span.begin == offset)) {
      shift += static_cast<int64_t>(e.replacement.size()) - e.span.size();
    } else if (e.span.begin < offset && offset < e.span.end) {
      // Inside a replaced region: clamp to the region's start.
      offset = e.span.begin;
    }
  }
  return static_cast<uint32_t>(offset + shift);
}

}  // namespace natgvd
