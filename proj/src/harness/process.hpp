#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace natgvd {

struct ProcessResult {
  bool spawned = false;
  bool timedOut = false;
  int exitCode = -1;  // -1 when killed by a signal
  int signal = 0;
  std::string out;
  std::string err;

  bool ok() const { return spawned && !timedOut && exitCode == 0; }
};

// Runs argv with `input` on stdin and collects stdout/stderr, killing the
// process after `timeout`. Never throws for process failures; inspect the
// result instead.
ProcessResult runProcess(const std::vector<std::string>& argv, std::string_view input,
                         std::chrono::milliseconds timeout);

// Runs a command line through /bin/sh -c.
ProcessResult runShell(const std::string& command, std::string_view input,
                       std::chrono::milliseconds timeout);

// Quotes a string for /bin/sh.
std::string shellQuote(std::string_view s);

// Owns a fresh directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(std::string_view name) const { return path_ + "/" + std::string(name); }

 private:
  std::string path_;
};

void writeFile(const std::string& path, std::string_view content);
std::string readFile(const std::string& path);

}  // namespace natgvd
