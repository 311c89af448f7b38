#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace natgvd {

// Half-open byte range [begin, end) into a source buffer.
struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;

  uint32_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(Span other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool overlaps(Span other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(Span, Span) = default;
};

enum class TokenKind : uint8_t {
  Identifier,
  Keyword,
  Number,
  String,
  Char,
  Punct,
  Directive,  // a whole preprocessor line, continuations included
};

struct Token {
  TokenKind kind;
  Span span;
  std::string_view text;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Span> comments;
};

// Throws ParseError(UnbalancedDelimiters) on an unterminated comment or literal.
LexResult lex(std::string_view source);

bool isKeyword(std::string_view word);

}  // namespace natgvd
