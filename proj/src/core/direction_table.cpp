#include "core/direction_table.hpp"

#include <array>
#include <cstring>

namespace wristleak {

namespace {

// Taxonomy rows, one string per direction, pairs as two adjacent digits.
// N covers the long verticals through 0 (01, 02, 03, 05) as well as the
// single-row steps; diagonal rows include the knight-like long moves.
constexpr const char* kRows[kDirectionCount] = {
    /* N  */ "41 52 63 74 85 96 08 71 82 93 05 02 01 03",
    /* S  */ "14 25 36 47 58 69 80 17 28 39 50 20 10 30",
    /* E  */ "12 23 45 56 78 89 13 46 79",
    /* W  */ "21 32 54 65 87 98 31 64 97",
    /* NE */ "42 53 75 86 09 43 76 72 06 83 73",
    /* NW */ "51 62 84 95 07 61 94 92 04 81 91",
    /* SE */ "15 26 48 59 70 16 49 18 40 29 19",
    /* SW */ "24 35 57 68 90 34 67 38 60 27 37",
    /* O  */ "11 22 33 44 55 66 77 88 99 00",
};

struct Table {
  std::array<std::array<int8_t, 10>, 10> lookup;  // [from][to] -> direction index
  std::array<std::vector<KeyPair>, kDirectionCount> rows;

  Table() {
    for (auto& row : lookup) row.fill(-1);
    int total = 0;
    for (int d = 0; d < kDirectionCount; ++d) {
      const char* p = kRows[d];
      while (*p) {
        if (*p == ' ') {
          ++p;
          continue;
        }
        const int from = p[0] - '0';
        const int to = p[1] - '0';
        if (lookup[from][to] != -1) throw ValidationError("direction table: duplicate pair");
        lookup[from][to] = static_cast<int8_t>(d);
        rows[d].push_back(KeyPair{p[0], p[1]});
        ++total;
        p += 2;
      }
    }
    if (total != 100) throw ValidationError("direction table: expected 100 pairs");
  }
};

const Table& table() {
  static const Table t;
  return t;
}

}  // namespace

Direction direction_of(char p, char q, const KeypadLayout& layout) {
  if (!layout.contains(p)) {
    throw ValidationError("key '" + std::string(1, p) + "' not in numeric layout");
  }
  if (!layout.contains(q)) {
    throw ValidationError("key '" + std::string(1, q) + "' not in numeric layout");
  }
  if (p < '0' || p > '9' || q < '0' || q > '9') {
    throw ValidationError("direction taxonomy is defined for numeric keys only");
  }
  return static_cast<Direction>(table().lookup[p - '0'][q - '0']);
}

const std::vector<KeyPair>& all_pairs(Direction d) {
  return table().rows[static_cast<size_t>(d)];
}

}  // namespace wristleak
