#include "core/layout.hpp"

#include <set>

#include <json.hpp>

namespace wristleak {

KeypadLayout::KeypadLayout(std::string name, std::map<char, Coord> keys)
    : name_(std::move(name)), keys_(std::move(keys)) {
  if (keys_.empty()) throw ValidationError("layout '" + name_ + "' has no keys");
  std::set<Coord> seen;
  for (const auto& [key, coord] : keys_) {
    if (!seen.insert(coord).second) {
      throw ValidationError("layout '" + name_ + "': duplicate coordinates for key '" +
                            std::string(1, key) + "'");
    }
  }
}

KeypadLayout::Coord KeypadLayout::coord_of(char key) const {
  auto it = keys_.find(key);
  if (it == keys_.end()) {
    throw ValidationError("key '" + std::string(1, key) + "' not in layout '" + name_ + "'");
  }
  return it->second;
}

std::string KeypadLayout::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, coord] : keys_) {
    j[std::string(1, key)] = {coord.first, coord.second};
  }
  return j.dump();
}

KeypadLayout KeypadLayout::from_json(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("layout file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("layout file must be a JSON object");
  std::map<char, Coord> keys;
  for (const auto& [sym, coord] : j.items()) {
    if (sym.size() != 1) throw ValidationError("layout key '" + sym + "' is not a single symbol");
    if (!coord.is_array() || coord.size() != 2 || !coord[0].is_number_integer() ||
        !coord[1].is_number_integer()) {
      throw ValidationError("layout key '" + sym + "' must map to [row, col]");
    }
    keys[sym[0]] = {coord[0].get<int>(), coord[1].get<int>()};
  }
  return KeypadLayout(name, std::move(keys));
}

const KeypadLayout& numeric_layout() {
  static const KeypadLayout layout("numeric", {
      {'1', {0, 0}}, {'2', {0, 1}}, {'3', {0, 2}},
      {'4', {1, 0}}, {'5', {1, 1}}, {'6', {1, 2}},
      {'7', {2, 0}}, {'8', {2, 1}}, {'9', {2, 2}},
                     {'0', {3, 1}},
  });
  return layout;
}

const KeypadLayout& qwerty_layout() {
  static const KeypadLayout layout = [] {
    std::map<char, KeypadLayout::Coord> keys;
    const char* rows[] = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
    for (int r = 0; r < 3; ++r) {
      int c = 0;
      for (const char* p = rows[r]; *p; ++p) keys[*p] = {r, c++};
    }
    return KeypadLayout("qwerty", std::move(keys));
  }();
  return layout;
}

}  // namespace wristleak
