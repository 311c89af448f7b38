#include "harness/corpus.hpp"

#include "common/error.hpp"

namespace natgvd {

namespace {

nlohmann::json parseObject(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("malformed JSON line: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "JSON line is not an object");
  return j;
}

template <typename T>
T field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::MalformedInput, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedInput, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

CorpusRecord parseCorpusLine(const std::string& line) {
  const nlohmann::json j = parseObject(line);
  CorpusRecord r;
  r.idx = field<int64_t>(j, "idx");
  r.func = field<std::string>(j, "func");
  r.target = j.contains("target") ? field<int>(j, "target") : 0;
  if (r.target != 0 && r.target != 1) throw Error(ErrorCode::MalformedInput, "target must be 0 or 1");
  return r;
}

nlohmann::json toJson(const CorpusRecord& r) {
  return {{"idx", r.idx}, {"func", r.func}, {"target", r.target}};
}

VariantRecord parseVariantLine(const std::string& line) {
  const nlohmann::json j = parseObject(line);
  VariantRecord r;
  r.idx = field<int64_t>(j, "idx");
  r.parentIdx = field<int64_t>(j, "parent_idx");
  for (const std::string& name : field<std::vector<std::string>>(j, "rules")) {
    auto rule = parseRule(name);
    if (!rule) throw Error(ErrorCode::MalformedInput, "unknown rule '" + name + "'");
    r.rules.push_back(*rule);
  }
  r.sites = field<std::vector<uint32_t>>(j, "sites");
  r.func = field<std::string>(j, "func");
  return r;
}

nlohmann::json toJson(const VariantRecord& r) {
  nlohmann::json rules = nlohmann::json::array();
  for (TransformRule rule : r.rules) rules.push_back(std::string(ruleName(rule)));
  return {{"idx", r.idx}, {"parent_idx", r.parentIdx}, {"rules", rules},
          {"sites", r.sites}, {"func", r.func}};
}

VariantRecord toRecord(const Variant& v, int64_t idx, int64_t parentIdx) {
  VariantRecord r;
  r.idx = idx;
  r.parentIdx = parentIdx;
  for (const Step& s : v.provenance) {
    r.rules.push_back(s.rule);
    r.sites.push_back(s.ordinal);
  }
  r.func = v.text;
  return r;
}

JsonlReader::JsonlReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw Error(ErrorCode::Io, "cannot open " + path);
}

std::optional<std::string> JsonlReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  return std::nullopt;
}

std::vector<CorpusRecord> readCorpus(const std::string& path) {
  JsonlReader reader(path);
  std::vector<CorpusRecord> out;
  while (auto line = reader.next()) {
    try {
      out.push_back(parseCorpusLine(*line));
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(reader.lineNumber()) + ": " + e.what());
    }
  }
  return out;
}

void writeCorpus(const std::string& path, const std::vector<CorpusRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  for (const CorpusRecord& r : records) out << toJson(r).dump() << '\n';
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
}

}  // namespace natgvd
