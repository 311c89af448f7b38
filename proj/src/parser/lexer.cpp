#include "parser/lexer.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "common/error.hpp"

namespace natgvd {

namespace {

constexpr std::string_view kKeywords[] = {
    "auto",     "break",    "case",     "char",       "const",
    "continue", "default",  "do",       "double",     "else",
    "enum",     "extern",   "float",    "for",        "goto",
    "if",       "inline",   "int",      "long",       "register",
    "restrict", "return",   "short",    "signed",     "sizeof",
    "static",   "struct",   "switch",   "typedef",    "union",
    "unsigned", "void",     "volatile", "while",      "_Bool",
    "_Complex", "_Atomic",  "_Alignas", "_Alignof",   "_Noreturn",
    "_Static_assert",       "_Thread_local",          "__inline",
    "__inline__",           "__restrict",             "__restrict__",
    "__const",  "__volatile__",         "__extension__",
    "__attribute__",        "__asm__",  "asm",        "__signed__",
};

// Longest first within each leading character group is handled by trying
// three-, then two-, then one-character punctuators.
constexpr std::string_view kPunct3[] = {"<<=", ">>=", "..."};
constexpr std::string_view kPunct2[] = {
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "*=", "/=", "%=", "+=", "-=", "&=", "^=", "|=", "##"};

bool isIdentStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool isIdentChar(unsigned char c) {
  return isIdentStart(c) || (c >= '0' && c <= '9');
}

bool isDigit(unsigned char c) { return c >= '0' && c <= '9'; }

bool isSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

[[noreturn]] void unterminated(const char* what, size_t at) {
  throw ParseError(ErrorCode::UnbalancedDelimiters,
                   std::string("unterminated ") + what + " at byte " +
                       std::to_string(at));
}

}  // namespace

bool isKeyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

LexResult lex(std::string_view src) {
  LexResult out;
  const size_t n = src.size();
  size_t i = 0;
  bool lineStart = true;

  auto push = [&](TokenKind kind, size_t begin, size_t end) {
    out.tokens.push_back(Token{kind,
                               Span{static_cast<uint32_t>(begin),
                                    static_cast<uint32_t>(end)},
                               src.substr(begin, end - begin)});
  };

  auto skipQuoted = [&](size_t start, char quote) {
    size_t j = start + 1;
    while (j < n) {
      if (src[j] == '\\') {
        j += 2;
        continue;
      }
      if (src[j] == quote) return j + 1;
      if (src[j] == '\n') break;
      ++j;
    }
    unterminated(quote == '"' ? "string literal" : "character literal", start);
  };

  while (i < n) {
    const unsigned char c = src[i];
    if (c == '\n') {
      lineStart = true;
      ++i;
      continue;
    }
    if (isSpace(c)) {
      ++i;
      continue;
    }
    if (c == '\\' && i + 1 < n && (src[i + 1] == '\n' || src[i + 1] == '\r')) {
      i += 2;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      size_t j = i;
      while (j < n && src[j] != '\n') ++j;
      out.comments.push_back(
          Span{static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
      i = j;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      size_t close = src.find("*/", i + 2);
      if (close == std::string_view::npos) unterminated("comment", i);
      out.comments.push_back(
          Span{static_cast<uint32_t>(i), static_cast<uint32_t>(close + 2)});
      i = close + 2;
      continue;
    }
    if (c == '#' && lineStart) {
      size_t j = i;
      while (j < n) {
        if (src[j] == '\\' && j + 1 < n && src[j + 1] == '\n') {
          j += 2;
          continue;
        }
        if (src[j] == '\n') break;
        ++j;
      }
      size_t end = j;
      while (end > i && isSpace(static_cast<unsigned char>(src[end - 1]))) --end;
      push(TokenKind::Directive, i, end);
      i = j;
      continue;
    }
    lineStart = false;

    if (isIdentStart(c)) {
      size_t j = i + 1;
      while (j < n && isIdentChar(static_cast<unsigned char>(src[j]))) ++j;
      std::string_view word = src.substr(i, j - i);
      // Encoding prefixes glue onto the following literal.
      if (j < n && (src[j] == '"' || src[j] == '\'') &&
          (word == "L" || word == "u" || word == "U" || word == "u8")) {
        size_t end = skipQuoted(j, src[j]);
        push(src[j] == '"' ? TokenKind::String : TokenKind::Char, i, end);
        i = end;
        continue;
      }
      push(isKeyword(word) ? TokenKind::Keyword : TokenKind::Identifier, i, j);
      i = j;
      continue;
    }
    if (isDigit(c) || (c == '.' && i + 1 < n && isDigit(src[i + 1]))) {
      size_t j = i + 1;
      while (j < n) {
        const unsigned char d = src[j];
        if (isIdentChar(d) || d == '.') {
          ++j;
        } else if ((d == '+' || d == '-') &&
                   (src[j - 1] == 'e' || src[j - 1] == 'E' ||
                    src[j - 1] == 'p' || src[j - 1] == 'P')) {
          ++j;
        } else {
          break;
        }
      }
      push(TokenKind::Number, i, j);
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      size_t end = skipQuoted(i, static_cast<char>(c));
      push(c == '"' ? TokenKind::String : TokenKind::Char, i, end);
      i = end;
      continue;
    }

    size_t len = 1;
    for (auto p : kPunct3) {
      if (src.substr(i, 3) == p) {
        len = 3;
        break;
      }
    }
    if (len == 1) {
      for (auto p : kPunct2) {
        if (src.substr(i, 2) == p) {
          len = 2;
          break;
        }
      }
    }
    push(TokenKind::Punct, i, i + len);
    i += len;
  }
  return out;
}

}  // namespace natgvd
