#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace natgvd {

// Standard integer types under the LP64 data model.
enum class IntType : uint8_t {
  Char,
  SChar,
  UChar,
  Short,
  UShort,
  Int,
  UInt,
  Long,
  ULong,
  LLong,
  ULLong,
};

// Parses declared type text such as "const unsigned long int". Storage
// classes and cv-qualifiers are ignored; anything else (pointers, arrays,
// typedef names, floating types) yields nullopt.
std::optional<IntType> parseIntegerType(std::string_view typeText);

// Type text with storage classes dropped and whitespace collapsed,
// e.g. "static  const int" -> "const int".
std::string normalizeTypeText(std::string_view typeText);

// Same text minus cv-qualifiers; suitable for declaring a fresh temporary.
std::string unqualifiedTypeText(std::string_view typeText);

std::string_view intTypeName(IntType t);
int intTypeBits(IntType t);
bool isUnsigned(IntType t);

IntType promote(IntType t);
// Usual arithmetic conversions over promoted operands.
IntType commonType(IntType a, IntType b);

// Type of an integer constant token (123, 0x7fU, 10ul, 'a'). nullopt for
// floating constants or malformed tokens.
std::optional<IntType> integerLiteralType(std::string_view token);

}  // namespace natgvd
