#include "harness/validation.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "analysis/ctypes.hpp"
#include "common/error.hpp"
#include "harness/process.hpp"
#include "parser/parser.hpp"

namespace natgvd {

namespace {

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
  for (size_t pos = tmpl.find(key); pos != std::string::npos;
       pos = tmpl.find(key, pos + value.size())) {
    tmpl.replace(pos, key.size(), value);
  }
  return tmpl;
}

ProcessResult runCompiler(const std::string& command, std::chrono::milliseconds timeout) {
  ProcessResult r = runShell(command, "", timeout);
  if (!r.spawned || r.exitCode == 126 || r.exitCode == 127) {
    throw Error(ErrorCode::CompilerSpawnFailure, "cannot run compiler: " + command);
  }
  return r;
}

bool compileOnce(const CompilerConfig& config, std::string_view text) {
  TempDir dir;
  const std::string file = dir.file("unit.c");
  writeFile(file, text);
  const ProcessResult r =
      runCompiler(substitute(config.checkCommand, "{file}", shellQuote(file)), config.timeout);
  return r.ok();
}

// Callees that nothing in the unit declares.
std::vector<std::string> undeclaredCallees(const Ast& ast) {
  std::set<std::string, std::less<>> known;
  const Span pre = ast.preamble();
  for (const Token& t : ast.tokens()) {
    if (t.kind == TokenKind::Identifier && t.span.end <= pre.end) known.emplace(ast.text(t.span));
  }
  known.insert(ast.node(ast.root()).name);
  for (const AstNode& n : ast.nodes()) {
    if (n.kind == NodeKind::Identifier && !n.typeText.empty()) known.emplace(ast.text(n.id));
  }
  std::vector<std::string> out;
  for (const AstNode& n : ast.nodes()) {
    if (n.kind != NodeKind::CallExpr || ast.kind(n.children[0]) != NodeKind::Identifier) continue;
    std::string name(ast.text(n.children[0]));
    if (!known.count(name) && std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(std::move(name));
    }
  }
  return out;
}

struct ParamShape {
  IntType type;
  bool array = false;
  std::string elemText;  // unqualified element type for the driver's buffer
};

struct Signature {
  std::string name;
  std::optional<IntType> ret;  // nullopt for void
  std::vector<ParamShape> params;
};

std::optional<Signature> signatureOf(const Ast& ast) {
  Signature sig;
  sig.name = ast.node(ast.root()).name;
  if (sig.name == "main") return std::nullopt;
  const std::string ret = unqualifiedTypeText(normalizeTypeText(ast.node(ast.root()).typeText));
  if (ret != "void") {
    sig.ret = parseIntegerType(ret);
    if (!sig.ret) return std::nullopt;
  }
  const NodeId params = ast.paramList();
  if (params == kNoNode) return sig;
  for (NodeId p : ast.node(params).children) {
    if (ast.kind(p) != NodeKind::Identifier) return std::nullopt;
    std::string t = ast.node(p).typeText;
    ParamShape shape{};
    for (std::string_view mod : {" *", " []"}) {
      if (t.size() > mod.size() && t.compare(t.size() - mod.size(), mod.size(), mod) == 0) {
        t.resize(t.size() - mod.size());
        shape.array = true;
        break;
      }
    }
    if (t.find_first_of("*[(") != std::string::npos) return std::nullopt;
    const auto type = parseIntegerType(t);
    if (!type) return std::nullopt;
    shape.type = *type;
    shape.elemText = std::string(intTypeName(*type));
    sig.params.push_back(shape);
  }
  // A non-identifier child (e.g. an opaque parameter) already returned; an
  // empty list also covers f(void).
  return sig;
}

std::optional<Signature> signatureOf(std::string_view text) {
  try {
    return signatureOf(parse(text));
  } catch (const Error&) {
    return std::nullopt;
  }
}

int typeBits(IntType t) {
  switch (t) {
    case IntType::Char:
    case IntType::SChar:
    case IntType::UChar: return 8;
    case IntType::Short:
    case IntType::UShort: return 16;
    case IntType::Int:
    case IntType::UInt: return 32;
    default: return 64;
  }
}

// Value bits truncated to the type width.
uint64_t truncate(IntType t, uint64_t v) {
  const int bits = typeBits(t);
  return bits == 64 ? v : v & ((uint64_t{1} << bits) - 1);
}

std::string literal(IntType t, uint64_t raw) {
  const int bits = typeBits(t);
  std::string body;
  if (isUnsigned(t)) {
    body = std::to_string(raw) + "ULL";
  } else {
    int64_t v = static_cast<int64_t>(raw);
    if (bits < 64 && (raw >> (bits - 1)) & 1) v = static_cast<int64_t>(raw | (~uint64_t{0} << bits));
    body = v == LLONG_MIN ? "(-9223372036854775807LL - 1)" : std::to_string(v) + "LL";
  }
  return "(" + std::string(intTypeName(t)) + ")" + body;
}

// Boundary values {min, -1, 0, 1, max} as raw bits of the type.
uint64_t boundary(IntType t, size_t which) {
  const int bits = typeBits(t);
  const uint64_t mask = bits == 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
  const bool u = isUnsigned(t);
  switch (which % 5) {
    case 0: return u ? 0 : (uint64_t{1} << (bits - 1));
    case 1: return mask;  // -1, or the maximum for unsigned types
    case 2: return 0;
    case 3: return 1;
    default: return u ? mask : mask >> 1;
  }
}

struct InputTable {
  // values[input][param] holds one value per scalar or arrayLength values.
  std::vector<std::vector<std::vector<uint64_t>>> values;
};

InputTable sampleInputs(const Signature& sig, const DifferentialOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  InputTable table;
  for (size_t k = 0; k < opt.inputs; ++k) {
    std::vector<std::vector<uint64_t>> row;
    for (const ParamShape& p : sig.params) {
      std::vector<uint64_t> vals(p.array ? opt.arrayLength : 1);
      for (uint64_t& v : vals) {
        if (k < 5) {
          v = boundary(p.type, k);
        } else if (rng() % 4 == 0) {
          v = boundary(p.type, static_cast<size_t>(rng() % 5));
        } else {
          v = truncate(p.type, rng());
        }
      }
      row.push_back(std::move(vals));
    }
    table.values.push_back(std::move(row));
  }
  return table;
}

std::string describeInput(const Signature& sig, const InputTable& table, size_t k,
                          const Ast& ast) {
  std::ostringstream os;
  std::vector<std::string> names;
  const NodeId params = ast.paramList();
  if (params != kNoNode) {
    for (NodeId p : ast.node(params).children) names.emplace_back(ast.text(p));
  }
  os << "input #" << k << ":";
  for (size_t i = 0; i < sig.params.size(); ++i) {
    os << " " << (i < names.size() ? names[i] : "arg" + std::to_string(i)) << "=";
    const auto& vals = table.values[k][i];
    if (sig.params[i].array) os << "{";
    for (size_t j = 0; j < vals.size(); ++j) {
      os << (j ? ", " : "") << literal(sig.params[i].type, vals[j]);
    }
    if (sig.params[i].array) os << "}";
  }
  return os.str();
}

std::string driverFor(std::string_view text, const Signature& sig, const InputTable& table,
                      const DifferentialOptions& opt) {
  std::ostringstream os;
  os << "#include <stdio.h>\n" << text << "\n\n";
  const size_t n = table.values.size();
  for (size_t i = 0; i < sig.params.size(); ++i) {
    const ParamShape& p = sig.params[i];
    os << "static const " << intTypeName(p.type) << " natgvd_in" << i << "[" << n << "]";
    if (p.array) os << "[" << opt.arrayLength << "]";
    os << " = {";
    for (size_t k = 0; k < n; ++k) {
      os << (k ? ", " : "") << (p.array ? "{" : "");
      const auto& vals = table.values[k][i];
      for (size_t j = 0; j < vals.size(); ++j) os << (j ? ", " : "") << literal(p.type, vals[j]);
      os << (p.array ? "}" : "");
    }
    os << "};\n";
  }
  os << "\nint main(void) {\n"
     << "  for (int k = 0; k < " << n << "; ++k) {\n";
  for (size_t i = 0; i < sig.params.size(); ++i) {
    const ParamShape& p = sig.params[i];
    if (!p.array) continue;
    os << "    " << p.elemText << " natgvd_buf" << i << "[" << opt.arrayLength << "];\n"
       << "    for (int j = 0; j < " << opt.arrayLength << "; ++j) natgvd_buf" << i
       << "[j] = natgvd_in" << i << "[k][j];\n";
  }
  std::string args;
  for (size_t i = 0; i < sig.params.size(); ++i) {
    if (i) args += ", ";
    args += (sig.params[i].array ? "natgvd_buf" : "natgvd_in") + std::to_string(i) +
            (sig.params[i].array ? "" : "[k]");
  }
  os << "    printf(\"%d\", k);\n";
  if (sig.ret) {
    const bool u = isUnsigned(*sig.ret);
    os << "    " << (u ? "unsigned long long" : "long long") << " natgvd_r = " << sig.name << "("
       << args << ");\n"
       << "    printf(\" " << (u ? "%llu" : "%lld") << "\", natgvd_r);\n";
  } else {
    os << "    " << sig.name << "(" << args << ");\n";
  }
  for (size_t i = 0; i < sig.params.size(); ++i) {
    if (!sig.params[i].array) continue;
    const bool u = isUnsigned(sig.params[i].type);
    os << "    for (int j = 0; j < " << opt.arrayLength << "; ++j) printf(\" "
       << (u ? "%llu" : "%lld") << "\", (" << (u ? "unsigned long long" : "long long")
       << ")natgvd_buf" << i << "[j]);\n";
  }
  os << "    printf(\"\\n\");\n    fflush(stdout);\n  }\n  return 0;\n}\n";
  return os.str();
}

struct RunOutcome {
  std::vector<std::string> lines;
  int exitCode;
  int signal;
};

RunOutcome buildAndRun(const CompilerConfig& config, const std::string& driver,
                       const DifferentialOptions& opt, const TempDir& dir, const std::string& tag) {
  const std::string file = dir.file(tag + ".c");
  const std::string exe = dir.file(tag);
  writeFile(file, driver);
  std::string cmd = substitute(config.buildCommand, "{file}", shellQuote(file));
  cmd = substitute(cmd, "{out}", shellQuote(exe));
  const ProcessResult built = runCompiler(cmd, config.timeout);
  if (!built.ok()) {
    throw Error(ErrorCode::CompileFailure, "driver for " + tag + " does not build:\n" + built.err);
  }
  const ProcessResult ran = runProcess({exe}, "", opt.runTimeout);
  if (!ran.spawned) throw Error(ErrorCode::CompileFailure, "cannot execute the built driver");
  if (ran.timedOut) throw Error(ErrorCode::ExecutionTimeout, tag + " timed out");
  RunOutcome r{{}, ran.exitCode, ran.signal};
  std::istringstream in(ran.out);
  for (std::string line; std::getline(in, line);) r.lines.push_back(line);
  return r;
}

}  // namespace

CompilerConfig CompilerConfig::forCompiler(const std::string& cc) {
  CompilerConfig c;
  c.checkCommand = cc + " -fsyntax-only -w -std=gnu11 -x c {file}";
  c.buildCommand = cc + " -O0 -fwrapv -w -std=gnu11 -x c -o {out} {file}";
  return c;
}

bool compileCheck(const CompilerConfig& config, std::string_view text) {
  if (compileOnce(config, text)) return true;
  std::vector<std::string> stubs;
  try {
    stubs = undeclaredCallees(parse(text));
  } catch (const Error&) {
    return false;
  }
  if (stubs.empty()) return false;
  std::string withStubs;
  for (const std::string& s : stubs) withStubs += "int " + s + "();\n";
  withStubs += text;
  return compileOnce(config, withStubs);
}

bool driverCompatible(std::string_view text) { return signatureOf(text).has_value(); }

std::string driverSource(std::string_view text, const DifferentialOptions& options) {
  const auto sig = signatureOf(text);
  if (!sig) throw Error(ErrorCode::NotDriverCompatible, "function signature is not driver-compatible");
  return driverFor(text, *sig, sampleInputs(*sig, options), options);
}

struct DifferentialSession::State {
  CompilerConfig config;
  DifferentialOptions options;
  Ast ast;
  Signature sig;
  InputTable table;
  RunOutcome original;
};

DifferentialSession::DifferentialSession(const CompilerConfig& config, std::string_view original,
                                         const DifferentialOptions& options) {
  Ast ast = parse(original);
  const auto sig = signatureOf(ast);
  if (!sig) throw Error(ErrorCode::NotDriverCompatible, "function signature is not driver-compatible");
  InputTable table = sampleInputs(*sig, options);
  TempDir dir;
  RunOutcome run = buildAndRun(config, driverFor(original, *sig, table, options), options, dir, "original");
  state_.reset(new State{config, options, std::move(ast), *sig, std::move(table), std::move(run)});
}

DifferentialSession::~DifferentialSession() = default;

DifferentialResult DifferentialSession::compare(std::string_view variant) const {
  const State& s = *state_;
  const auto varSig = signatureOf(variant);
  if (!varSig || varSig->params.size() != s.sig.params.size()) {
    throw Error(ErrorCode::NotDriverCompatible, "variant signature differs from the original");
  }
  TempDir dir;
  const RunOutcome& a = s.original;
  const RunOutcome b =
      buildAndRun(s.config, driverFor(variant, s.sig, s.table, s.options), s.options, dir, "variant");

  DifferentialResult result;
  result.inputsRun = std::min(a.lines.size(), b.lines.size());
  const size_t common = result.inputsRun;
  for (size_t k = 0; k < common; ++k) {
    if (a.lines[k] != b.lines[k]) {
      result.equivalent = false;
      result.witness = describeInput(s.sig, s.table, k, s.ast) + " (original: " + a.lines[k] +
                       ", variant: " + b.lines[k] + ")";
      return result;
    }
  }
  if (a.lines.size() != b.lines.size() || a.exitCode != b.exitCode || a.signal != b.signal) {
    result.equivalent = false;
    const size_t k = std::min(common, s.table.values.size() - 1);
    result.witness = describeInput(s.sig, s.table, k, s.ast) + " (exit status differs)";
  }
  return result;
}

DifferentialResult differentialTest(const CompilerConfig& config, std::string_view original,
                                    std::string_view variant, const DifferentialOptions& options) {
  return DifferentialSession(config, original, options).compare(variant);
}

size_t exportAugmentation(const std::vector<VariantRecord>& variants,
                          const std::map<int64_t, int>& parentTargets, double ratio,
                          uint64_t seed, const std::string& path) {
  if (ratio < 0 || ratio > 1) throw Error(ErrorCode::InvalidArgument, "ratio must be within [0, 1]");
  const size_t n = variants.size();
  const auto keep = static_cast<size_t>(std::llround(ratio * static_cast<double>(n)));
  // Seeded key per position; the `keep` smallest keys survive.
  std::mt19937_64 rng(seed);
  std::vector<std::pair<uint64_t, size_t>> keys;
  for (size_t i = 0; i < n; ++i) keys.push_back({rng(), i});
  std::sort(keys.begin(), keys.end());
  std::vector<bool> chosen(n, false);
  for (size_t i = 0; i < keep; ++i) chosen[keys[i].second] = true;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  size_t written = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!chosen[i]) continue;
    auto it = parentTargets.find(variants[i].parentIdx);
    if (it == parentTargets.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "no target for parent " + std::to_string(variants[i].parentIdx));
    }
    out << toJson(CorpusRecord{variants[i].idx, variants[i].func, it->second}).dump() << '\n';
    ++written;
  }
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  return written;
}

}  // namespace natgvd
