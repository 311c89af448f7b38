#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "composer/composer.hpp"

namespace natgvd {

// One corpus line: {"idx": int, "func": string, "target": 0|1}.
struct CorpusRecord {
  int64_t idx = 0;
  std::string func;
  int target = 0;
};

// One variant line: {"idx", "parent_idx", "rules", "sites", "func"}.
struct VariantRecord {
  int64_t idx = 0;
  int64_t parentIdx = 0;
  std::vector<TransformRule> rules;
  std::vector<uint32_t> sites;
  std::string func;
};

CorpusRecord parseCorpusLine(const std::string& line);
nlohmann::json toJson(const CorpusRecord& r);

VariantRecord parseVariantLine(const std::string& line);
nlohmann::json toJson(const VariantRecord& r);
VariantRecord toRecord(const Variant& v, int64_t idx, int64_t parentIdx);

// Line-streaming reader; blank lines are skipped. Throws Error(Io) when the
// file cannot be opened and Error(MalformedInput) on a malformed line.
class JsonlReader {
 public:
  explicit JsonlReader(const std::string& path);
  // Next non-blank line, or nullopt at end of file.
  std::optional<std::string> next();
  size_t lineNumber() const { return line_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  size_t line_ = 0;
};

std::vector<CorpusRecord> readCorpus(const std::string& path);
void writeCorpus(const std::string& path, const std::vector<CorpusRecord>& records);

}  // namespace natgvd
