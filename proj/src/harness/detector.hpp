#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace natgvd {

inline constexpr int kNonVulnerable = 0;
inline constexpr int kVulnerable = 1;

struct DetectorRequest {
  int64_t idx = 0;
  std::string func;
};

struct DetectorVerdict {
  int64_t idx = 0;
  int label = kNonVulnerable;

  friend bool operator==(const DetectorVerdict&, const DetectorVerdict&) = default;
};

// A black-box classifier. Only the label crosses this interface.
class Detector {
 public:
  virtual ~Detector() = default;
  // Verdicts come back in request order.
  virtual std::vector<DetectorVerdict> query(const std::vector<DetectorRequest>& requests) = 0;
  virtual std::string describe() const = 0;
};

// Labels every sample with a fixed label.
class EchoDetector : public Detector {
 public:
  explicit EchoDetector(int label = kVulnerable) : label_(label) {}
  std::vector<DetectorVerdict> query(const std::vector<DetectorRequest>& requests) override;
  std::string describe() const override;

 private:
  int label_;
};

// Labels a sample vulnerable iff its text contains a match of the pattern
// (ECMAScript regular expression).
class PatternDetector : public Detector {
 public:
  explicit PatternDetector(std::string pattern);
  std::vector<DetectorVerdict> query(const std::vector<DetectorRequest>& requests) override;
  std::string describe() const override;
  bool matches(std::string_view text) const;

 private:
  std::string pattern_;
  std::regex re_;
};

// Speaks the JSONL protocol with an external command run through /bin/sh:
// request lines {"idx": n, "func": "..."} on stdin, response lines
// {"idx": n, "label": 0|1} on stdout.
class ExternalDetector : public Detector {
 public:
  ExternalDetector(std::string command, std::chrono::milliseconds timeout,
                   bool perSample = false);
  std::vector<DetectorVerdict> query(const std::vector<DetectorRequest>& requests) override;
  std::string describe() const override { return command_; }

 private:
  std::vector<DetectorVerdict> queryBatch(const std::vector<DetectorRequest>& requests);

  std::string command_;
  std::chrono::milliseconds timeout_;
  bool perSample_;
};

std::string encodeRequests(const std::vector<DetectorRequest>& requests);

// Validates a detector's stdout against the requests and returns verdicts in
// request order. Throws Error(ProtocolViolation).
std::vector<DetectorVerdict> decodeResponses(std::string_view output,
                                             const std::vector<DetectorRequest>& requests);

// "builtin:echo", "builtin:echo:0", "builtin:pattern:<regex>", or an external
// command line.
std::unique_ptr<Detector> makeDetector(const std::string& spec,
                                       std::chrono::milliseconds timeout,
                                       bool perSample = false);

}  // namespace natgvd
