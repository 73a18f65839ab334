#pragma once

#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/direction_table.hpp"
#include "core/types.hpp"

namespace wristleak {

// Set of ordered numeric key pairs, one bit per (from, to) digit pair.
class PairSet {
 public:
  static PairSet all();
  static PairSet of_direction(Direction d);

  void insert(KeyPair p) { bits_.set(index(p)); }
  void erase(KeyPair p) { bits_.reset(index(p)); }
  bool contains(KeyPair p) const { return bits_.test(index(p)); }
  size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  // Digit masks of the keys appearing as pair second/first elements;
  // bit k corresponds to digit k.
  uint16_t seconds_mask() const;
  uint16_t firsts_mask() const;

  std::vector<KeyPair> to_vector() const;  // ordered by (from, to)

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  static size_t index(KeyPair p) {
    return static_cast<size_t>(p.from - '0') * 10 + static_cast<size_t>(p.to - '0');
  }
  std::bitset<100> bits_;
};

// Per-transition surviving key pairs. An unclassified transition starts out
// as all 100 pairs so later positions stay aligned.
struct CandidateSet {
  std::vector<PairSet> per_transition;

  size_t transition_count() const { return per_transition.size(); }
};

using DirectionSequence = std::vector<std::optional<Direction>>;  // nullopt = unclassified

CandidateSet candidates_for(const DirectionSequence& dirs);

// Single left-to-right sweep: a pair (p,q) at position j is eliminated when
// the already-pruned position j-1 holds no pair ending in p.
CandidateSet forward_trace(CandidateSet cands);

// Mirror sweep, right to left: (p,q) at position k is eliminated when
// position k+1 holds no pair starting with q.
CandidateSet backward_trace(CandidateSet cands);

// Forward pass, then backward pass, exactly in that order.
CandidateSet bidirectional_trace(CandidateSet cands);

struct RandomWalkConfig {
  size_t subsequences = 16;
  size_t min_length = 2;   // in transitions
  size_t max_length = 6;
  uint64_t seed = 0;
};

// Repeatedly bidirectionally traces random contiguous subsequences in
// isolation; a pair survives when it survives in a strict majority of the
// subsequences covering its position. Every position must be covered at
// least once.
CandidateSet random_walk_trace(const CandidateSet& cands, const RandomWalkConfig& config);

struct RecoveryReport {
  DirectionSequence directions;
  std::string mode;
  CandidateSet traced;
  std::vector<std::string> candidates;  // full digit sequences
  std::map<int, char> unambiguous;      // 1-based key position -> digit
  std::vector<int> adjacent_rule_positions;  // positions with a uniquely
                                             // identified neighboring transition
  std::vector<int> rule_mismatch;  // where the two unambiguity rules disagree
  size_t trials_worst_case = 0;

  std::string to_json() const;
  static RecoveryReport from_json(const std::string& text);
};

inline constexpr size_t kMaxCandidates = 1000000;

// Chains compatible pairs depth-first into full sequences. Positions are
// unambiguous when every candidate agrees there (authoritative); the
// adjacent-unique-transition reading is reported alongside and any
// disagreement is flagged.
RecoveryReport enumerate_candidates(const CandidateSet& cands);

// Keeps only the candidates with maximal agreement against the per-position
// phone predictions and recomputes the ambiguity accounting.
RecoveryReport phone_assisted_recovery(const RecoveryReport& report,
                                       const std::vector<std::string>& phone_preds);

}  // namespace wristleak
