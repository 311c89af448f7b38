#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "parser/ast.hpp"

namespace natgvd {

// Lines holding at least one non-whitespace character.
size_t loc(std::string_view text);

struct HalsteadCounts {
  size_t totalOperators = 0;  // N1
  size_t totalOperands = 0;   // N2
  size_t distinctOperators = 0;
  size_t distinctOperands = 0;

  size_t length() const { return totalOperators + totalOperands; }
  size_t vocabulary() const { return distinctOperators + distinctOperands; }
  double volume() const;
};

// Operator/operand census of the function definition (preamble excluded).
//
//   operators: binary, unary and assignment operator tokens; "?:" per
//              ternary; "()" per call; "[]" per index; "." and "->";
//              "(cast)" per cast; sizeof; the keywords if else while for do
//              switch case default return break continue goto
//   operands:  identifiers (function name, parameters and declarators
//              included), literals, member names, label names
//
// Type names, grouping parentheses, braces, ";" and "," separators are
// neither. Tokens inside opaque nodes count by token class.
HalsteadCounts halsteadCounts(const Ast& ast);
double halsteadVolume(const Ast& ast);

// 1 + if, while, for, do-while, case (not default), ternary, &&, ||.
int cyclomatic(const Ast& ast);

// Unit-cost character edit distance, two rows of memory.
size_t levenshtein(std::string_view a, std::string_view b);

struct MetricsReport {
  size_t loc = 0;
  double halsteadVolume = 0;
  int cyclomaticComplexity = 0;
  double avgCpgDegree = 0;
  size_t editDistance = 0;

  // Percent change against the reference; absent when the reference value
  // is zero.
  std::optional<double> locDelta;
  std::optional<double> volumeDelta;
  std::optional<double> cyclomaticDelta;
  std::optional<double> avgDegreeDelta;
};

// Measures `variant` against `reference`. Both texts are full units
// (preamble plus function); LOC and edit distance use the function text only.
MetricsReport report(std::string_view reference, std::string_view variant);

std::optional<double> percentChange(double before, double after);

}  // namespace natgvd
