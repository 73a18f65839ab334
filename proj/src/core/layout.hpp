#pragma once

#include <map>
#include <string>
#include <utility>

#include "core/error.hpp"

namespace wristleak {

// Keypad geometry: key symbol -> (row, col) grid coordinates, 0-based.
class KeypadLayout {
 public:
  using Coord = std::pair<int, int>;

  KeypadLayout(std::string name, std::map<char, Coord> keys);

  const std::string& name() const { return name_; }
  const std::map<char, Coord>& keys() const { return keys_; }
  bool contains(char key) const { return keys_.count(key) != 0; }

  Coord coord_of(char key) const;

  std::string to_json() const;
  static KeypadLayout from_json(const std::string& text, const std::string& name);

 private:
  std::string name_;
  std::map<char, Coord> keys_;
};

// The ten-key numeric pad: rows 123 / 456 / 789 / _0_.
const KeypadLayout& numeric_layout();

// Standard QWERTY letters; supported as a configurable layout for the
// classification pipeline only (the direction taxonomy is numeric-only).
const KeypadLayout& qwerty_layout();

}  // namespace wristleak
