// Scripted stand-in for an external detector. argv[1] picks the behaviour;
// requests arrive as JSONL on stdin.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "echo";
  if (mode == "sleep") {
    std::this_thread::sleep_for(std::chrono::seconds(30));
    return 0;
  }
  if (mode == "crash") return 1;

  std::vector<nlohmann::json> requests;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty()) requests.push_back(nlohmann::json::parse(line));
  }
  if (mode == "garbage") {
    std::cout << "not json\n";
    return 0;
  }
  for (size_t i = 0; i < requests.size(); ++i) {
    const nlohmann::json& r = requests[mode == "reverse" ? requests.size() - 1 - i : i];
    const std::string func = r.at("func").get<std::string>();
    nlohmann::json out = {{"idx", r.at("idx")}, {"label", func.find(">= 0") != std::string::npos}};
    out["label"] = out["label"].get<bool>() ? 1 : 0;
    if (mode == "extra-key") out["score"] = 0.5;
    if (mode == "bad-label") out["label"] = 7;
    if (mode == "wrong-idx") out["idx"] = r.at("idx").get<long long>() + 1000;
    if ((mode == "missing" || mode == "missing-and-fail") && i + 1 == requests.size()) break;
    std::cout << out.dump() << '\n';
    if (mode == "duplicate") std::cout << out.dump() << '\n';
  }
  std::cout.flush();
  if (mode == "exit-after-complete") return 3;
  if (mode == "missing-and-fail") return 2;
  return 0;
}
