#pragma once

#include <string>
#include <string_view>

namespace natgvd {

// Identifier-renaming baseline: parameters and locals become v_0, v_1, ...
// in declaration order (names already present in the unit are skipped).
// Structure is untouched, so structural metrics do not move.
std::string renameBaseline(std::string_view unitText);

}  // namespace natgvd
