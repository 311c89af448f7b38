#include "analysis/ctypes.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>
#include <vector>

namespace natgvd {

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool isStorageClass(std::string_view w) {
  return w == "static" || w == "extern" || w == "register" || w == "auto" ||
         w == "_Thread_local" || w == "inline" || w == "__inline" ||
         w == "__inline__";
}

bool isCv(std::string_view w) {
  return w == "const" || w == "volatile" || w == "__const" ||
         w == "__volatile__";
}

int rank(IntType t) {
  switch (t) {
    case IntType::Char:
    case IntType::SChar:
    case IntType::UChar: return 1;
    case IntType::Short:
    case IntType::UShort: return 2;
    case IntType::Int:
    case IntType::UInt: return 3;
    case IntType::Long:
    case IntType::ULong: return 4;
    case IntType::LLong:
    case IntType::ULLong: return 5;
  }
  return 0;
}

IntType toUnsigned(IntType t) {
  switch (t) {
    case IntType::Int: return IntType::UInt;
    case IntType::Long: return IntType::ULong;
    case IntType::LLong: return IntType::ULLong;
    default: return t;
  }
}

}  // namespace

std::optional<IntType> parseIntegerType(std::string_view typeText) {
  int nSigned = 0, nUnsigned = 0, nChar = 0, nShort = 0, nInt = 0, nLong = 0;
  for (const std::string& w : words(typeText)) {
    if (isStorageClass(w) || isCv(w)) continue;
    if (w == "signed" || w == "__signed__") ++nSigned;
    else if (w == "unsigned") ++nUnsigned;
    else if (w == "char") ++nChar;
    else if (w == "short") ++nShort;
    else if (w == "int") ++nInt;
    else if (w == "long") ++nLong;
    else return std::nullopt;
  }
  if (nSigned + nUnsigned > 1 || nChar > 1 || nShort > 1 || nInt > 1 ||
      nLong > 2) {
    return std::nullopt;
  }
  if (nChar + nShort + nInt + nLong + nSigned + nUnsigned == 0) return std::nullopt;
  const bool u = nUnsigned == 1;
  if (nChar) {
    if (nShort || nInt || nLong) return std::nullopt;
    if (nSigned) return IntType::SChar;
    return u ? IntType::UChar : IntType::Char;
  }
  if (nShort) {
    if (nLong) return std::nullopt;
    return u ? IntType::UShort : IntType::Short;
  }
  if (nLong == 2) return u ? IntType::ULLong : IntType::LLong;
  if (nLong == 1) return u ? IntType::ULong : IntType::Long;
  return u ? IntType::UInt : IntType::Int;
}

std::string normalizeTypeText(std::string_view typeText) {
  std::string out;
  for (const std::string& w : words(typeText)) {
    if (isStorageClass(w)) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string unqualifiedTypeText(std::string_view typeText) {
  std::string out;
  for (const std::string& w : words(typeText)) {
    if (isStorageClass(w) || isCv(w)) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string_view intTypeName(IntType t) {
  switch (t) {
    case IntType::Char: return "char";
    case IntType::SChar: return "signed char";
    case IntType::UChar: return "unsigned char";
    case IntType::Short: return "short";
    case IntType::UShort: return "unsigned short";
    case IntType::Int: return "int";
    case IntType::UInt: return "unsigned int";
    case IntType::Long: return "long";
    case IntType::ULong: return "unsigned long";
    case IntType::LLong: return "long long";
    case IntType::ULLong: return "unsigned long long";
  }
  return "int";
}

int intTypeBits(IntType t) {
  switch (rank(t)) {
    case 1: return 8;
    case 2: return 16;
    case 3: return 32;
    default: return 64;
  }
}

bool isUnsigned(IntType t) {
  return t == IntType::UChar || t == IntType::UShort || t == IntType::UInt ||
         t == IntType::ULong || t == IntType::ULLong;
}

IntType promote(IntType t) { return rank(t) < 3 ? IntType::Int : t; }

IntType commonType(IntType a, IntType b) {
  a = promote(a);
  b = promote(b);
  if (a == b) return a;
  if (isUnsigned(a) == isUnsigned(b)) return rank(a) >= rank(b) ? a : b;
  const IntType u = isUnsigned(a) ? a : b;
  const IntType s = isUnsigned(a) ? b : a;
  if (rank(u) >= rank(s)) return u;
  if (intTypeBits(s) > intTypeBits(u)) return s;
  return toUnsigned(s);
}

std::optional<IntType> integerLiteralType(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  if (tok.front() == '\'') return IntType::Int;
  if (!std::isdigit(static_cast<unsigned char>(tok.front()))) return std::nullopt;

  int base = 10;
  size_t i = 0;
  if (tok.size() > 1 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
    base = 16;
    i = 2;
  } else if (tok.size() > 1 && tok[0] == '0' && (tok[1] == 'b' || tok[1] == 'B')) {
    base = 2;
    i = 2;
  } else if (tok[0] == '0') {
    base = 8;
  }
  unsigned __int128 value = 0;
  size_t digits = 0;
  for (; i < tok.size(); ++i) {
    const char c = tok[i];
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else break;
    if (d >= base) {
      // 'e'/'E' in a decimal literal, '8'/'9' in octal, etc.
      if (base == 10 || base == 8) return std::nullopt;
      break;
    }
    value = value * static_cast<unsigned>(base) + static_cast<unsigned>(d);
    if (value > UINT64_MAX) return std::nullopt;
    ++digits;
  }
  if (digits == 0 && base != 8) return std::nullopt;
  int u = 0, l = 0;
  for (; i < tok.size(); ++i) {
    const char c = tok[i];
    if (c == 'u' || c == 'U') ++u;
    else if (c == 'l' || c == 'L') ++l;
    else return std::nullopt;  // '.', exponent, or stray characters
  }
  if (u > 1 || l > 2) return std::nullopt;

  std::vector<IntType> candidates;
  const bool decimal = base == 10;
  auto add = [&](IntType s, IntType us) {
    if (!u) candidates.push_back(s);
    if (u || !decimal) candidates.push_back(us);
  };
  if (l == 0) add(IntType::Int, IntType::UInt);
  if (l <= 1) add(IntType::Long, IntType::ULong);
  add(IntType::LLong, IntType::ULLong);
  for (IntType t : candidates) {
    const int bits = intTypeBits(t) - (isUnsigned(t) ? 0 : 1);
    const unsigned __int128 max = (static_cast<unsigned __int128>(1) << bits) - 1;
    if (value <= max) return t;
  }
  return std::nullopt;
}

}  // namespace natgvd
