#pragma once

#include "ptpn/acptpn.hpp"
#include "ptpn/automata.hpp"
#include "ptpn/sdtn.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ptpn {

// Symbols: tokens (p, k) with k in 0..cmax+1, control pairs (q, y) with y in 0..v, then # and $.
struct Alphabet {
  int places = 0;
  int ages = 0;  // cmax + 2
  int states = 0;
  long v = 0;

  int tokens() const { return places * ages; }
  int token(int p, int k) const { return p * ages + k; }
  int state(int q, long y) const { return tokens() + q * int(v + 1) + int(y); }
  int hash() const { return tokens() + states * int(v + 1); }
  int dollar() const { return hash() + 1; }
  int size() const { return dollar() + 1; }

  bool is_token(int s) const { return s >= 0 && s < tokens(); }
  bool is_state(int s) const { return s >= tokens() && s < hash(); }
  AgedToken token_of(int s) const { return {s / ages, s % ages}; }
  std::pair<int, long> state_of(int s) const {
    int r = s - tokens();
    return {r / int(v + 1), r % (v + 1)};
  }
  std::string name(int s, const PtpnNet& net) const;
};

Alphabet alphabet_for(const PtpnNet& net, long v);

// Control pair, low groups from the last to the first, $, center, $, high groups from the last to the
// first. Tokens inside a group are listed in sorted order, so every configuration has one encoding.
Word enc(const Alphabet& sigma, const BudgetConfig& b);
BudgetConfig dec(const Alphabet& sigma, const Word& w);  // throws Error on malformed words
std::string to_string(const Word& w, const Alphabet& sigma, const PtpnNet& net);

// Encodings of the upward closure (adding free-place tokens) of a finite set of configurations.
Nfa automaton_uc(const PtpnNet& net, long v, const std::vector<BudgetConfig>& c);
// Encodings of all configurations with budget at most v.
Nfa automaton_universal(const PtpnNet& net, long v);
// Encodings of all configurations with at most v tokens on cost places.
Nfa automaton_cost_bounded(const PtpnNet& net, long v);

// ---- translation of ->_A reachability into an SD-TN ----

enum class Mode { init, init_low, init_zero, sim, disc, type1_1, type1_2, type2_1, type2_2, final1, final2, done };
std::string to_string(Mode m);

// One control state of the generated net, i.e. a valuation of the generator variables.
struct EncState {
  Mode mode = Mode::init;
  int nstate = 0;  // control state of the timed net
  long budget = 0;
  int astate = -1;     // automaton state; -1 before the first symbol, -2 once the word is complete
  uint64_t flags = 0;  // covered tokens of the target
  int cover = 0;       // index of the target group covered by the current group, 0 when off
  int low_bound = 0;   // groups formed from now on may only cover low target groups below this
  int high_bound = 0;  // same for the high groups streamed at the end
  std::vector<int> rdebt;
  auto operator<=>(const EncState&) const = default;
};

struct CoverSlot {
  int group = 0;  // -m..-1 high, 0 center, 1..n low
  AgedToken token;
};

struct EncodingStats {
  size_t controls = 0;   // control states materialised so far
  double control_bound = 0;  // size of the full valuation product
};

// The net is generated on demand: moves(control) materialises the transitions of one control state.
class SdtnEncoding {
public:
  SdtnEncoding(const PtpnNet& net, long v, const Nfa& automaton, const BudgetConfig& target);

  int place_count() const;
  int zero_place(int p, int k) const;
  int low_place(int p, int k) const;
  int high_place(int p, int k) const;
  int debt_place(int p, int k) const;
  std::vector<std::string> place_names() const;
  std::vector<std::pair<int, int>> transfer() const;  // (zero(p,k), low(p,k)) for all p, k
  const std::vector<CoverSlot>& slots() const;
  int rmax() const;
  const Alphabet& alphabet() const;

  LazySystem system() const;
  NetConfig initial() const;
  bool is_final(const NetConfig& c) const;
  EncState control(int id) const;
  EncodingStats stats() const;

  // Move labels are automaton symbols (or -1); the word read along a run.
  static Word word_of(const std::vector<int>& labels);

  struct Impl;

private:
  std::shared_ptr<Impl> impl_;
};

SdtnEncoding build_sdtn(const PtpnNet& net, long v, const Nfa& automaton, const BudgetConfig& target);

struct OracleResult {
  Verdict verdict = Verdict::unknown;
  std::optional<BudgetConfig> witness;  // an initial configuration from the automaton, when known
  size_t explored = 0;
  std::string diagnostic;
};

// Is there c in dec(L(automaton)) with c ->_A* up(U), up taken with respect to adding free tokens?
OracleResult oracle_exists_init(const PtpnNet& net, long v, const Nfa& automaton, const std::vector<BudgetConfig>& u,
                                const SearchBudget& budget);

}  // namespace ptpn
