#include "transitions/tracing.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "core/rng.hpp"

namespace wristleak {

namespace {
using nlohmann::json;
}

PairSet PairSet::all() {
  PairSet s;
  s.bits_.set();
  return s;
}

PairSet PairSet::of_direction(Direction d) {
  PairSet s;
  for (const KeyPair& p : all_pairs(d)) s.insert(p);
  return s;
}

uint16_t PairSet::seconds_mask() const {
  uint16_t mask = 0;
  for (size_t i = 0; i < 100; ++i) {
    if (bits_.test(i)) mask |= static_cast<uint16_t>(1u << (i % 10));
  }
  return mask;
}

uint16_t PairSet::firsts_mask() const {
  uint16_t mask = 0;
  for (size_t i = 0; i < 100; ++i) {
    if (bits_.test(i)) mask |= static_cast<uint16_t>(1u << (i / 10));
  }
  return mask;
}

std::vector<KeyPair> PairSet::to_vector() const {
  std::vector<KeyPair> out;
  out.reserve(bits_.count());
  for (size_t i = 0; i < 100; ++i) {
    if (bits_.test(i)) {
      out.push_back(KeyPair{static_cast<char>('0' + i / 10), static_cast<char>('0' + i % 10)});
    }
  }
  return out;
}

CandidateSet candidates_for(const DirectionSequence& dirs) {
  if (dirs.empty()) throw ValidationError("tracing: empty direction sequence");
  CandidateSet cands;
  cands.per_transition.reserve(dirs.size());
  for (const auto& d : dirs) {
    cands.per_transition.push_back(d ? PairSet::of_direction(*d) : PairSet::all());
  }
  return cands;
}

CandidateSet forward_trace(CandidateSet cands) {
  auto& sets = cands.per_transition;
  for (size_t j = 1; j < sets.size(); ++j) {
    const uint16_t prev_seconds = sets[j - 1].seconds_mask();
    for (const KeyPair& p : sets[j].to_vector()) {
      if (!(prev_seconds & (1u << (p.from - '0')))) sets[j].erase(p);
    }
  }
  return cands;
}

CandidateSet backward_trace(CandidateSet cands) {
  auto& sets = cands.per_transition;
  for (size_t k = sets.size() - 1; k-- > 0;) {
    const uint16_t next_firsts = sets[k + 1].firsts_mask();
    for (const KeyPair& p : sets[k].to_vector()) {
      if (!(next_firsts & (1u << (p.to - '0')))) sets[k].erase(p);
    }
  }
  return cands;
}

CandidateSet bidirectional_trace(CandidateSet cands) {
  return backward_trace(forward_trace(std::move(cands)));
}

CandidateSet random_walk_trace(const CandidateSet& cands, const RandomWalkConfig& config) {
  const size_t n = cands.transition_count();
  if (n < 2) throw ValidationError("random_walk_trace: need at least 2 transitions");
  if (config.subsequences == 0 || config.min_length == 0 ||
      config.min_length > config.max_length) {
    throw ValidationError("random_walk_trace: bad subsequence configuration");
  }

  Rng rng(config.seed);
  std::vector<size_t> covered(n, 0);
  std::vector<std::array<uint32_t, 100>> survived(n);
  for (auto& row : survived) row.fill(0);

  for (size_t r = 0; r < config.subsequences; ++r) {
    const size_t len = std::min<size_t>(
        n, static_cast<size_t>(
               rng.uniform_int(static_cast<int64_t>(config.min_length),
                               static_cast<int64_t>(config.max_length))));
    const size_t start = static_cast<size_t>(rng.below(n - len + 1));

    CandidateSet slice;
    slice.per_transition.assign(cands.per_transition.begin() + static_cast<ptrdiff_t>(start),
                                cands.per_transition.begin() +
                                    static_cast<ptrdiff_t>(start + len));
    const CandidateSet traced = bidirectional_trace(std::move(slice));
    for (size_t i = 0; i < len; ++i) {
      ++covered[start + i];
      for (const KeyPair& p : traced.per_transition[i].to_vector()) {
        ++survived[start + i][static_cast<size_t>(p.from - '0') * 10 +
                              static_cast<size_t>(p.to - '0')];
      }
    }
  }

  for (size_t i = 0; i < n; ++i) {
    if (covered[i] == 0) {
      throw ValidationError("random_walk_trace: position " + std::to_string(i + 1) +
                            " covered by no subsequence");
    }
  }

  CandidateSet out;
  out.per_transition.assign(n, PairSet{});
  for (size_t i = 0; i < n; ++i) {
    for (const KeyPair& p : cands.per_transition[i].to_vector()) {
      const size_t idx =
          static_cast<size_t>(p.from - '0') * 10 + static_cast<size_t>(p.to - '0');
      if (2 * survived[i][idx] > covered[i]) out.per_transition[i].insert(p);
    }
  }
  return out;
}

RecoveryReport enumerate_candidates(const CandidateSet& cands) {
  const size_t n = cands.transition_count();
  if (n == 0) throw ValidationError("enumerate_candidates: empty candidate set");
  for (size_t i = 0; i < n; ++i) {
    if (cands.per_transition[i].empty()) {
      throw InconsistencyError("tracing eliminated every pair at transition " +
                               std::to_string(i + 1));
    }
  }

  RecoveryReport report;
  report.traced = cands;

  // Depth-first chaining: the pair at position i+1 must start with the
  // second key of the pair at position i.
  std::vector<std::vector<KeyPair>> rows;
  rows.reserve(n);
  for (const auto& s : cands.per_transition) rows.push_back(s.to_vector());

  std::string chain(n + 1, '0');
  std::vector<std::vector<KeyPair>::const_iterator> frame;
  auto emit = [&report](const std::string& seq) {
    if (report.candidates.size() >= kMaxCandidates) {
      throw InconsistencyError("candidate enumeration overflow (cap " +
                               std::to_string(kMaxCandidates) + ")");
    }
    report.candidates.push_back(seq);
  };

  struct State {
    size_t pos;
    size_t idx;
  };
  std::vector<State> stack;
  for (size_t first = 0; first < rows[0].size(); ++first) {
    stack.push_back({0, first});
    while (!stack.empty()) {
      const State st = stack.back();
      stack.pop_back();
      const KeyPair p = rows[st.pos][st.idx];
      chain[st.pos] = p.from;
      chain[st.pos + 1] = p.to;
      if (st.pos + 1 == n) {
        emit(chain);
        continue;
      }
      const auto& next_row = rows[st.pos + 1];
      // Push in reverse so candidates come out in lexicographic row order.
      for (size_t k = next_row.size(); k-- > 0;) {
        if (next_row[k].from == p.to) stack.push_back({st.pos + 1, k});
      }
    }
  }
  std::sort(report.candidates.begin(), report.candidates.end());
  report.trials_worst_case = report.candidates.size();

  if (!report.candidates.empty()) {
    for (size_t pos = 0; pos <= n; ++pos) {
      const char digit = report.candidates.front()[pos];
      bool agree = true;
      for (const auto& c : report.candidates) {
        if (c[pos] != digit) {
          agree = false;
          break;
        }
      }
      if (agree) report.unambiguous[static_cast<int>(pos + 1)] = digit;
    }
  }

  // Alternative reading: a key is inferable when the preceding or following
  // transition is uniquely identified. The all-candidates-agree map above is
  // authoritative; disagreements are surfaced for inspection.
  for (size_t pos = 1; pos <= n + 1; ++pos) {
    const bool prev_unique = pos >= 2 && cands.per_transition[pos - 2].size() == 1;
    const bool next_unique = pos <= n && cands.per_transition[pos - 1].size() == 1;
    if (prev_unique || next_unique) {
      report.adjacent_rule_positions.push_back(static_cast<int>(pos));
    }
  }
  for (int pos = 1; pos <= static_cast<int>(n) + 1; ++pos) {
    const bool by_agreement = report.unambiguous.count(pos) != 0;
    const bool by_adjacent =
        std::find(report.adjacent_rule_positions.begin(), report.adjacent_rule_positions.end(),
                  pos) != report.adjacent_rule_positions.end();
    if (by_agreement != by_adjacent) report.rule_mismatch.push_back(pos);
  }
  return report;
}

RecoveryReport phone_assisted_recovery(const RecoveryReport& report,
                                       const std::vector<std::string>& phone_preds) {
  if (phone_preds.empty()) throw ValidationError("phone_assisted_recovery: no phone predictions");
  const size_t key_count = report.traced.transition_count() + 1;
  if (phone_preds.size() != key_count) {
    throw ValidationError("phone_assisted_recovery: " + std::to_string(phone_preds.size()) +
                          " predictions for " + std::to_string(key_count) + " key positions");
  }
  for (const auto& p : phone_preds) {
    if (p.size() != 1 || p[0] < '0' || p[0] > '9') {
      throw ValidationError("phone_assisted_recovery: predictions must be single digits");
    }
  }

  size_t best = 0;
  std::vector<size_t> agreement(report.candidates.size(), 0);
  for (size_t c = 0; c < report.candidates.size(); ++c) {
    for (size_t i = 0; i < key_count; ++i) {
      if (report.candidates[c][i] == phone_preds[i][0]) ++agreement[c];
    }
    best = std::max(best, agreement[c]);
  }

  RecoveryReport out;
  out.directions = report.directions;
  out.mode = report.mode + "+phone";
  for (size_t c = 0; c < report.candidates.size(); ++c) {
    if (agreement[c] == best) out.candidates.push_back(report.candidates[c]);
  }
  out.trials_worst_case = out.candidates.size();

  // Surviving candidates induce the narrowed per-transition sets.
  const size_t n = report.traced.transition_count();
  out.traced.per_transition.assign(n, PairSet{});
  for (const auto& c : out.candidates) {
    for (size_t i = 0; i < n; ++i) {
      out.traced.per_transition[i].insert(KeyPair{c[i], c[i + 1]});
    }
  }
  if (!out.candidates.empty()) {
    for (size_t pos = 0; pos <= n; ++pos) {
      const char digit = out.candidates.front()[pos];
      bool agree = true;
      for (const auto& c : out.candidates) {
        if (c[pos] != digit) {
          agree = false;
          break;
        }
      }
      if (agree) out.unambiguous[static_cast<int>(pos + 1)] = digit;
    }
  }
  for (size_t pos = 1; pos <= n + 1; ++pos) {
    const bool prev_unique = pos >= 2 && out.traced.per_transition[pos - 2].size() == 1;
    const bool next_unique = pos <= n && out.traced.per_transition[pos - 1].size() == 1;
    if (prev_unique || next_unique) {
      out.adjacent_rule_positions.push_back(static_cast<int>(pos));
    }
  }
  for (int pos = 1; pos <= static_cast<int>(n) + 1; ++pos) {
    const bool by_agreement = out.unambiguous.count(pos) != 0;
    const bool by_adjacent =
        std::find(out.adjacent_rule_positions.begin(), out.adjacent_rule_positions.end(), pos) !=
        out.adjacent_rule_positions.end();
    if (by_agreement != by_adjacent) out.rule_mismatch.push_back(pos);
  }
  return out;
}

std::string RecoveryReport::to_json() const {
  nlohmann::ordered_json j;
  json dirs = json::array();
  for (const auto& d : directions) dirs.push_back(d ? direction_name(*d) : "U");
  j["directions"] = std::move(dirs);
  j["mode"] = mode;
  json per_transition = json::array();
  for (const auto& s : traced.per_transition) {
    json row = json::array();
    for (const KeyPair& p : s.to_vector()) {
      row.push_back(std::string(1, p.from) + "-" + std::string(1, p.to));
    }
    per_transition.push_back(std::move(row));
  }
  j["per_transition"] = std::move(per_transition);
  j["candidates"] = candidates;
  json unamb = json::object();
  for (const auto& [pos, key] : unambiguous) {
    unamb[std::to_string(pos)] = std::string(1, key);
  }
  j["unambiguous"] = std::move(unamb);
  j["adjacent_rule_positions"] = adjacent_rule_positions;
  j["rule_mismatch_positions"] = rule_mismatch;
  j["trials_worst_case"] = trials_worst_case;
  return j.dump(2) + "\n";
}

RecoveryReport RecoveryReport::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("recovery report is not valid JSON: ") + e.what());
  }
  RecoveryReport r;
  for (const auto& d : j.at("directions")) {
    const auto name = d.get<std::string>();
    r.directions.push_back(name == "U" ? std::optional<Direction>{}
                                       : std::optional<Direction>{direction_from_name(name)});
  }
  r.mode = j.value("mode", "");
  for (const auto& row : j.at("per_transition")) {
    PairSet s;
    for (const auto& p : row) {
      const auto str = p.get<std::string>();
      if (str.size() != 3 || str[1] != '-') throw ValidationError("bad pair '" + str + "'");
      s.insert(KeyPair{str[0], str[2]});
    }
    r.traced.per_transition.push_back(s);
  }
  r.candidates = j.at("candidates").get<std::vector<std::string>>();
  for (const auto& [pos, key] : j.at("unambiguous").items()) {
    r.unambiguous[std::stoi(pos)] = key.get<std::string>()[0];
  }
  if (j.contains("adjacent_rule_positions")) {
    r.adjacent_rule_positions = j["adjacent_rule_positions"].get<std::vector<int>>();
  }
  if (j.contains("rule_mismatch_positions")) {
    r.rule_mismatch = j["rule_mismatch_positions"].get<std::vector<int>>();
  }
  r.trials_worst_case = j.value("trials_worst_case", r.candidates.size());
  return r;
}

}  // namespace wristleak
