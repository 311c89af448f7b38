#pragma once

#include <string>
#include <vector>

namespace natgvd::testing {

struct Fixture {
  std::string name;  // file name without directory
  std::string text;
};

// Sorted by file name. `subdir` is relative to tests/fixtures.
std::vector<Fixture> loadFixtures(const std::string& subdir);

// Every fixture directory: driver functions plus the CPG set.
std::vector<Fixture> allFixtures();

std::string fixturesDir();

}  // namespace natgvd::testing
