#include "support/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace natgvd::testing {

std::string fixturesDir() { return NATGVD_FIXTURES_DIR; }

std::vector<Fixture> loadFixtures(const std::string& subdir) {
  std::vector<Fixture> out;
  for (const auto& entry : std::filesystem::directory_iterator(fixturesDir() + "/" + subdir)) {
    if (entry.path().extension() != ".c") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    out.push_back({entry.path().filename().string(), os.str()});
  }
  if (out.empty()) throw std::runtime_error("no fixtures under " + subdir);
  std::sort(out.begin(), out.end(),
            [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

std::vector<Fixture> allFixtures() {
  std::vector<Fixture> out = loadFixtures("driver");
  for (Fixture& f : loadFixtures("cpg")) out.push_back(std::move(f));
  return out;
}

}  // namespace natgvd::testing
