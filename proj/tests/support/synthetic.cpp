#include "support/synthetic.hpp"

#include <array>

namespace natgvd::testing {

std::vector<CorpusRecord> syntheticCorpus() {
  static constexpr std::array<const char*, 5> names = {"len", "off", "count", "pos", "room"};
  std::vector<CorpusRecord> out;
  for (int k = 0; k < 25; ++k) {
    const std::string v = names[static_cast<size_t>(k % 5)];
    const std::string fn = "sample_" + std::to_string(k);
    const std::string lit = std::to_string(k + 1);
    std::string body;
    int target = 1;
    switch (k % 5) {
      case 0:
      case 1:
        body = "  int r;\n  if (" + v + " >= 0) {\n    r = buf[" + v + "];\n  } else {\n    r = " +
               lit + ";\n  }\n  return r;\n";
        break;
      case 2:
        body = "  int r = " + lit + ";\n  if (" + v + " >= 0) r = buf[" + v + "];\n  return r;\n";
        break;
      case 3:
        body = "  int r = 0;\n  while (" + v + " >= 0) {\n    r += buf[" + v + "];\n    " + v +
               " -= " + lit + ";\n  }\n  return r;\n";
        break;
      default:
        // Alternately a ground-truth negative that matches the pattern and a
        // positive the detector misses.
        if (k % 2) {
          target = 0;
          body = "  if (" + v + " >= 0) return buf[" + v + "];\n  return 0;\n";
        } else {
          body = "  if (" + v + " > " + lit + ") return buf[" + v + "];\n  return 0;\n";
        }
        break;
    }
    CorpusRecord r;
    r.idx = 100 + k;
    r.func = "int " + fn + "(int *buf, int " + v + ") {\n" + body + "}\n";
    r.target = target;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace natgvd::testing
