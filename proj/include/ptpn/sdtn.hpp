#pragma once

#include "ptpn/wqo.hpp"

#include <climits>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptpn {

using Counts = std::vector<int>;  // multiset over places as a count vector

struct NetTransition {
  std::string name;
  int from = 0;
  int to = 0;
  Counts in, out;
  bool transfer = false;  // fires the net's global transfer relation
};

// Simultaneous-disjoint-transfer net.
struct SdtnNet {
  std::vector<std::string> states;
  std::vector<std::string> places;
  std::vector<NetTransition> transitions;
  std::vector<std::pair<int, int>> st;  // (source, target) pairs of the shared transfer

  int state_index(const std::string& name) const;
  int place_index(const std::string& name) const;
  void validate() const;  // shapes and the disjointness restrictions
  std::vector<int> transfer_sources() const;
};

struct NetConfig {
  int state = 0;
  Counts marking;
  auto operator<=>(const NetConfig&) const = default;
};

bool enabled(const SdtnNet& net, const NetConfig& c, int t);
NetConfig fire_sdtn(const SdtnNet& net, const NetConfig& c, int t);

// Petri net with control states and one inhibitor arc (place, transition).
struct InhibitorNet {
  std::vector<std::string> states;
  std::vector<std::string> places;
  std::vector<NetTransition> transitions;  // transfer flags unused
  int inhibitor_place = 0;
  int inhibited_transition = 0;

  void validate() const;
};

bool enabled(const InhibitorNet& net, const NetConfig& c, int t);
NetConfig fire_inhibitor(const InhibitorNet& net, const NetConfig& c, int t);

// Boolean combination of atoms over configurations.
struct Target {
  enum class Op { atom_state, atom_exactly, atom_at_least, conj, disj, neg, truth };
  Op op = Op::truth;
  int index = 0;  // state or place
  int k = 0;
  std::vector<Target> kids;

  static Target state_is(int q) { return {Op::atom_state, q, 0, {}}; }
  static Target exactly(int p, int k) { return {Op::atom_exactly, p, k, {}}; }
  static Target at_least(int p, int k) { return {Op::atom_at_least, p, k, {}}; }
  static Target all(std::vector<Target> ts) { return {Op::conj, 0, 0, std::move(ts)}; }
  static Target any(std::vector<Target> ts) { return {Op::disj, 0, 0, std::move(ts)}; }
  static Target negate(Target t) { return {Op::neg, 0, 0, {std::move(t)}}; }
  static Target config(const NetConfig& c);  // the exact configuration

  bool holds(int state, const Counts& m) const;
  bool holds(const NetConfig& c) const { return holds(c.state, c.marking); }
};

// Conjunctions of positive atoms; a negated atom expands into alternatives over the given ranges.
std::vector<std::vector<Target>> to_dnf(const Target& t, int states);

// Net surgery: a fresh state "fin" reachable with the empty marking exactly when the target holds.
struct PlainTarget {
  SdtnNet net;
  NetConfig final;
};
PlainTarget target_to_plain(const SdtnNet& net, const Target& target);

struct SdtnInstance {
  SdtnNet net;
  NetConfig init, final;
};
struct InhibitorInstance {
  InhibitorNet net;
  NetConfig init, final;
};

// Transfers become drains in a fresh state guarded by one inhibitor arc. When all transfer
// transitions share a target state this is the plain construction (one state, p^i and p_q places,
// one drain per pair and one inhibited return); otherwise a lock place and a done place serialise the
// return so that a single inhibited transition suffices.
InhibitorInstance sdtn_to_inhibitor(const SdtnInstance& in);
SdtnInstance inhibitor_to_sdtn(const InhibitorInstance& in);

// ---- bounded explicit-state search ----

inline constexpr int kOmega = INT_MAX;

struct Move {
  int to = 0;
  Counts in, out;
  bool transfer = false;
  int inhibitor = -1;  // place that must be empty
  int label = 0;
};

// A control-state system over counters, with moves generated on demand per control state.
struct LazySystem {
  int places = 0;
  std::vector<std::pair<int, int>> st;
  std::function<std::vector<Move>(int control)> moves;
  // Places where more tokens never disable a move nor falsify the target; they may be
  // accelerated to omega and are ignored by the token bound.
  std::vector<bool> upward;
  // Configurations from which the target is known to be unreachable; they are dropped.
  std::function<bool(const NetConfig&)> dead;
  // Optional search order (lower first) from a configuration and its depth; breadth-first when unset.
  std::function<long(const NetConfig&, int depth)> priority;
};

struct SearchBudget {
  size_t max_states = 1000000;
  int bound = 12;  // max tokens on non-upward places
  int jobs = 1;
};

struct ReachResult {
  Verdict verdict = Verdict::unknown;
  std::optional<std::vector<int>> witness;  // move labels, when the run is concrete
  std::vector<NetConfig> path;
  size_t explored = 0;
  bool truncated = false;    // some state exceeded the token bound
  bool accelerated = false;  // omega values were introduced
  bool exhausted = false;
  std::string diagnostic;
};

std::optional<NetConfig> apply_move(const LazySystem& sys, const NetConfig& c, const Move& mv);

ReachResult reach_bounded(const LazySystem& sys, const std::vector<NetConfig>& init,
                          const std::function<bool(const NetConfig&)>& target, const SearchBudget& budget);

LazySystem as_system(const SdtnNet& net);
LazySystem as_system(const InhibitorNet& net);

ReachResult reach_bounded(const SdtnNet& net, const std::vector<NetConfig>& init, const Target& target,
                          const SearchBudget& budget);
ReachResult reach_bounded(const InhibitorNet& net, const std::vector<NetConfig>& init, const Target& target,
                          const SearchBudget& budget);

// Place-invariant bound: a positive weighting y with y.C <= 0 for every transition (and
// y(tg) <= y(sr) for transfer pairs) bounds every place. Returns per-place bounds from the
// given initial marking, or nothing if no such weighting covers every place.
std::optional<Counts> structural_bounds(const SdtnNet& net, const Counts& init);

}  // namespace ptpn
