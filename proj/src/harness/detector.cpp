#include "harness/detector.hpp"

#include <map>

#include <json.hpp>

#include "common/error.hpp"
#include "harness/process.hpp"

namespace natgvd {

std::vector<DetectorVerdict> EchoDetector::query(const std::vector<DetectorRequest>& requests) {
  std::vector<DetectorVerdict> out;
  for (const DetectorRequest& r : requests) out.push_back({r.idx, label_});
  return out;
}

std::string EchoDetector::describe() const { return "builtin:echo:" + std::to_string(label_); }

PatternDetector::PatternDetector(std::string pattern) : pattern_(std::move(pattern)) {
  try {
    re_ = std::regex(pattern_, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::InvalidArgument, "bad detector pattern: " + std::string(e.what()));
  }
}

bool PatternDetector::matches(std::string_view text) const {
  return std::regex_search(text.begin(), text.end(), re_);
}

std::vector<DetectorVerdict> PatternDetector::query(const std::vector<DetectorRequest>& requests) {
  std::vector<DetectorVerdict> out;
  for (const DetectorRequest& r : requests) {
    out.push_back({r.idx, matches(r.func) ? kVulnerable : kNonVulnerable});
  }
  return out;
}

std::string PatternDetector::describe() const { return "builtin:pattern:" + pattern_; }

std::string encodeRequests(const std::vector<DetectorRequest>& requests) {
  std::string out;
  for (const DetectorRequest& r : requests) {
    out += nlohmann::json{{"idx", r.idx}, {"func", r.func}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<DetectorVerdict> decodeResponses(std::string_view output,
                                             const std::vector<DetectorRequest>& requests) {
  auto violation = [](const std::string& msg) {
    return Error(ErrorCode::ProtocolViolation, "detector protocol: " + msg);
  };
  std::map<int64_t, int> labels;
  size_t pos = 0;
  while (pos < output.size()) {
    size_t end = output.find('\n', pos);
    if (end == std::string_view::npos) end = output.size();
    const std::string line(output.substr(pos, end - pos));
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw violation("malformed response line: " + line);
    }
    if (!j.is_object() || j.size() != 2 || !j.contains("idx") || !j.contains("label")) {
      throw violation("response must be exactly {idx, label}: " + line);
    }
    if (!j["idx"].is_number_integer()) throw violation("non-integer idx: " + line);
    if (!j["label"].is_number_integer()) throw violation("non-integer label: " + line);
    const int64_t idx = j["idx"].get<int64_t>();
    const int64_t label = j["label"].get<int64_t>();
    if (label != 0 && label != 1) throw violation("label must be 0 or 1: " + line);
    if (!labels.emplace(idx, static_cast<int>(label)).second) {
      throw violation("duplicate idx " + std::to_string(idx));
    }
  }
  std::vector<DetectorVerdict> out;
  for (const DetectorRequest& r : requests) {
    auto it = labels.find(r.idx);
    if (it == labels.end()) throw violation("missing idx " + std::to_string(r.idx));
    out.push_back({r.idx, it->second});
    labels.erase(it);
  }
  if (!labels.empty()) throw violation("unrequested idx " + std::to_string(labels.begin()->first));
  return out;
}

ExternalDetector::ExternalDetector(std::string command, std::chrono::milliseconds timeout,
                                   bool perSample)
    : command_(std::move(command)), timeout_(timeout), perSample_(perSample) {}

std::vector<DetectorVerdict> ExternalDetector::queryBatch(
    const std::vector<DetectorRequest>& requests) {
  const std::string input = encodeRequests(requests);
  ProcessResult res;
  // One retry when the process itself fails (spawn error, crash, timeout).
  for (int attempt = 0; attempt < 2; ++attempt) {
    res = runShell(command_, input, timeout_);
    const bool notFound = res.exitCode == 126 || res.exitCode == 127;
    if (res.spawned && !res.timedOut && res.signal == 0 && !notFound) break;
  }
  if (!res.spawned || res.exitCode == 126 || res.exitCode == 127) {
    throw Error(ErrorCode::DetectorSpawnFailure,
                "cannot run detector '" + command_ + "': " + res.err);
  }
  if (res.timedOut) {
    throw Error(ErrorCode::Timeout, "detector '" + command_ + "' timed out");
  }
  if (res.exitCode != 0) {
    // A failing exit is tolerated only when the output is already complete.
    try {
      return decodeResponses(res.out, requests);
    } catch (const Error&) {
      throw Error(ErrorCode::ProtocolViolation,
                  "detector exited with status " + std::to_string(res.exitCode) +
                      " after incomplete output");
    }
  }
  return decodeResponses(res.out, requests);
}

std::vector<DetectorVerdict> ExternalDetector::query(const std::vector<DetectorRequest>& requests) {
  if (!perSample_) return queryBatch(requests);
  std::vector<DetectorVerdict> out;
  for (const DetectorRequest& r : requests) {
    auto one = queryBatch({r});
    out.push_back(one.front());
  }
  return out;
}

std::unique_ptr<Detector> makeDetector(const std::string& spec, std::chrono::milliseconds timeout,
                                       bool perSample) {
  constexpr std::string_view kEcho = "builtin:echo";
  constexpr std::string_view kPattern = "builtin:pattern:";
  if (spec == kEcho) return std::make_unique<EchoDetector>(kVulnerable);
  if (spec.rfind(std::string(kEcho) + ":", 0) == 0) {
    const std::string label = spec.substr(kEcho.size() + 1);
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::InvalidArgument, "echo detector label must be 0 or 1");
    }
    return std::make_unique<EchoDetector>(label == "1" ? kVulnerable : kNonVulnerable);
  }
  if (spec.rfind(kPattern, 0) == 0) {
    return std::make_unique<PatternDetector>(spec.substr(kPattern.size()));
  }
  if (spec.rfind("builtin:", 0) == 0) {
    throw Error(ErrorCode::InvalidArgument, "unknown builtin detector '" + spec + "'");
  }
  return std::make_unique<ExternalDetector>(spec, timeout, perSample);
}

}  // namespace natgvd
