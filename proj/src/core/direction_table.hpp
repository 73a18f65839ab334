#pragma once

#include <vector>

#include "core/layout.hpp"
#include "core/types.hpp"

namespace wristleak {

// Ordered pair of numeric keys: a transition from one press to the next.
struct KeyPair {
  char from = 0;
  char to = 0;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
  friend auto operator<=>(const KeyPair&, const KeyPair&) = default;
};

// Direction class of the ordered transition p -> q on the numeric pad.
// The mapping is an embedded 100-entry taxonomy table, not derived from
// geometry at runtime; class sizes and inverse symmetry are pinned by tests.
Direction direction_of(char p, char q, const KeypadLayout& layout = numeric_layout());

// All ordered key pairs classified as direction d (the taxonomy row).
const std::vector<KeyPair>& all_pairs(Direction d);

}  // namespace wristleak
