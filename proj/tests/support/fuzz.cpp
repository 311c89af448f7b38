#include "support/fuzz.hpp"

#include <array>

namespace natgvd::testing {

namespace {

constexpr std::array<const char*, 6> kVars = {"a", "b", "n", "i", "acc", "tmp"};
constexpr std::array<const char*, 18> kBinary = {"+",  "-",  "*",  "/",  "%",  "<<",
                                                 ">>", "<",  ">",  "<=", ">=", "==",
                                                 "!=", "&",  "|",  "^",  "&&", "||"};
constexpr std::array<const char*, 10> kCompound = {"+=", "-=", "*=", "/=", "%=",
                                                   "<<=", ">>=", "&=", "|=", "^="};

}  // namespace

std::string FunctionFuzzer::ws() {
  switch (pick(10)) {
    case 0: return "";
    case 1: return "  ";
    case 2: return "\t";
    case 3: return " /* c */ ";
    default: return " ";
  }
}

std::string FunctionFuzzer::sp() {
  return chance(10) ? "  " : " ";
}

std::string FunctionFuzzer::var() { return kVars[static_cast<size_t>(pick(kVars.size()))]; }

std::string FunctionFuzzer::literal() {
  switch (pick(9)) {
    case 0: return "0x" + std::to_string(pick(4096)) + (chance(30) ? "u" : "");
    case 1: return "0" + std::to_string(pick(8));
    case 2: return std::to_string(pick(100000)) + (chance(30) ? "UL" : "");
    case 3: return "'" + std::string(chance(50) ? "\\n" : "x") + "'";
    case 4: return "1.5e" + std::to_string(pick(4));
    case 5: return "\"s\\\"t\"";
    default: return std::to_string(pick(10));
  }
}

std::string FunctionFuzzer::lvalue() {
  switch (pick(6)) {
    case 0: return "p[" + var() + "]";
    case 1: return "*p";
    case 2: return "s.f";
    case 3: return "sp->g";
    default: return var();
  }
}

std::string FunctionFuzzer::expr(int depth) {
  if (depth <= 0) return chance(60) ? var() : literal();
  switch (pick(14)) {
    case 0:
    case 1:
    case 2:
      return expr(depth - 1) + ws() + kBinary[static_cast<size_t>(pick(kBinary.size()))] + ws() +
             expr(depth - 1);
    case 3: {
      static constexpr std::array<const char*, 6> ops = {"-", "!", "~", "++", "--", "&"};
      const std::string op = ops[static_cast<size_t>(pick(ops.size()))];
      if (op == "++" || op == "--" || op == "&") return op + lvalue();
      return op + (op == "-" ? " " : "") + expr(depth - 1);
    }
    case 4: return lvalue() + (chance(50) ? "++" : "--");
    case 5: return "(" + expr(depth - 1) + ")";
    case 6: return expr(depth - 1) + " ? " + expr(depth - 1) + " : " + expr(depth - 1);
    case 7: {
      std::string args;
      const int n = pick(3);
      for (int k = 0; k < n; ++k) args += (k ? ", " : "") + expr(depth - 1);
      return (chance(50) ? "g" : "h2") + ws() + "(" + args + ")";
    }
    case 8: return "p[" + expr(depth - 1) + "]";
    case 9: return chance(50) ? "s.f" : "sp->g";
    case 10: {
      const char* types[] = {"int", "unsigned long", "char", "u32"};
      std::string t = types[pick(typedefs_ ? 4 : 3)];
      return "(" + t + ")" + ws() + expr(depth - 1);
    }
    case 11: return chance(50) ? "sizeof(int)" : "sizeof " + var();
    case 12: return lvalue() + " " + kCompound[static_cast<size_t>(pick(kCompound.size()))] + " " + expr(depth - 1);
    default: return lvalue() + " = " + expr(depth - 1);
  }
}

std::string FunctionFuzzer::decl() {
  static constexpr std::array<const char*, 5> types = {"int", "unsigned", "long", "char", "short"};
  std::string t = typedefs_ && chance(20) ? "u32" : types[static_cast<size_t>(pick(types.size()))];
  if (chance(10)) t = "const " + t;
  if (chance(5)) t = "static " + t;
  std::string out = t + " ";
  const int n = 1 + pick(3);
  for (int k = 0; k < n; ++k) {
    if (k) out += ", ";
    out += "v" + std::to_string(pick(50));
    if (chance(15)) {
      out += "[" + std::to_string(1 + pick(8)) + "]";
      if (chance(40)) out += " = {1, 2}";
    } else if (chance(60)) {
      out += " = " + expr(1);
    }
  }
  return out + ";";
}

std::string FunctionFuzzer::block(int depth, bool inLoop, bool inSwitch) {
  const std::string outer = indent_;
  indent_ += chance(80) ? "  " : "\t";
  std::string out = "{\n";
  const int n = pick(4);
  for (int k = 0; k < n; ++k) out += indent_ + stmt(depth - 1, inLoop, inSwitch) + "\n";
  if (chance(10)) out += indent_ + "// trailing note\n";
  indent_ = outer;
  return out + indent_ + "}";
}

std::string FunctionFuzzer::stmt(int depth, bool inLoop, bool inSwitch) {
  auto body = [&](bool loop, bool sw) {
    return depth > 0 && chance(70) ? block(depth, loop, sw) : stmt(0, loop, sw);
  };
  const int limit = depth > 0 ? 16 : 6;
  switch (pick(limit)) {
    case 0: return decl();
    case 1: return expr(2) + ";";
    case 2: return lvalue() + sp() + "=" + sp() + expr(2) + ";";
    case 3: return "return" + (chance(80) ? " " + expr(2) : std::string()) + ";";
    case 4:
      if (inLoop) return chance(50) ? "break;" : "continue;";
      if (inSwitch) return "break;";
      return ";";
    case 5: return lvalue() + " " + kCompound[static_cast<size_t>(pick(kCompound.size()))] + " " + expr(1) + ";";
    case 6:
    case 7: {
      std::string out = "if" + sp() + "(" + expr(2) + ")" + sp() + body(inLoop, inSwitch);
      if (chance(50)) out += sp() + "else" + sp() + body(inLoop, inSwitch);
      return out;
    }
    case 8: return "while" + sp() + "(" + expr(2) + ") " + body(true, inSwitch);
    case 9: return "do " + body(true, inSwitch) + " while (" + expr(2) + ");";
    case 10: {
      std::string init = chance(30) ? "int k = 0" : chance(70) ? var() + " = 0" : "";
      std::string cond = chance(85) ? var() + " < " + expr(1) : "";
      std::string upd = chance(85) ? var() + "++" : "";
      return "for (" + init + ";" + sp() + cond + ";" + sp() + upd + ") " + body(true, inSwitch);
    }
    case 11: {
      std::string out = "switch (" + expr(1) + ") {\n";
      const int cases = 1 + pick(3);
      for (int k = 0; k < cases; ++k) {
        out += indent_ + "case " + std::to_string(k) + ":\n";
        out += indent_ + "  " + stmt(depth - 1, inLoop, true) + "\n";
        if (chance(60)) out += indent_ + "  break;\n";
      }
      if (chance(50)) out += indent_ + "default:\n" + indent_ + "  ;\n";
      return out + indent_ + "}";
    }
    case 12: {
      const std::string label = "L" + std::to_string(labels_++);
      return "goto " + label + ";\n" + indent_ + label + ":\n" + indent_ + stmt(0, inLoop, inSwitch);
    }
    case 13: return block(depth, inLoop, inSwitch);
    case 14: return "/* block comment\n" + indent_ + "   spans lines */ " + expr(1) + ";";
    default: return expr(1) + ";" + ws() + "// line comment";
  }
}

std::string FunctionFuzzer::next() {
  labels_ = 0;
  indent_.clear();
  typedefs_ = chance(40);
  std::string out;
  if (chance(30)) out += "#include <stdio.h>\n";
  if (chance(20)) out += "#define LIMIT 10\n";
  if (typedefs_) out += "typedef unsigned int u32;\n";
  out += "struct S { int f; int g; };\n";
  if (chance(30)) out += "/* leading comment */\n";
  static constexpr std::array<const char*, 5> ret = {"int", "void", "static int", "unsigned long",
                                                     "char"};
  out += ret[static_cast<size_t>(pick(ret.size()))];
  out += chance(20) ? "\n" : " ";
  out += "fz" + std::to_string(pick(1000)) + "(int a, int b, int *p, struct S s, struct S *sp)";
  out += chance(30) ? "\n" : " ";
  out += "{\n  int n = 0, i = 0, acc = 0;\n  long tmp = 0;\n";
  indent_ = "  ";
  const int n = 1 + pick(6);
  for (int k = 0; k < n; ++k) out += indent_ + stmt(3, false, false) + "\n";
  out += "  return acc;\n}\n";
  if (chance(20)) out += "\n";
  return out;
}

}  // namespace natgvd::testing
