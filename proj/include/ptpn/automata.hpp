#pragma once

#include <optional>
#include <vector>

namespace ptpn {

using Word = std::vector<int>;

// Nondeterministic automaton over symbols 0..alphabet-1; symbol -1 is an epsilon move.
struct Nfa {
  static constexpr int epsilon = -1;

  int alphabet = 0;
  std::vector<std::vector<std::pair<int, int>>> edges;  // per state: (symbol, target)
  std::vector<bool> accepting;
  std::vector<int> initial;

  explicit Nfa(int alphabet_size = 0) : alphabet(alphabet_size) {}

  int size() const { return int(edges.size()); }
  int add_state(bool accept = false);
  void add_edge(int from, int symbol, int to);
  void add_any(int from, int to);  // an edge for every symbol

  std::vector<int> closure(std::vector<int> states) const;
  std::vector<int> step(const std::vector<int>& states, int symbol) const;
  bool accepts(const Word& w) const;
};

// Complete deterministic automaton (one initial state, one edge per symbol, no epsilon).
Nfa determinize(const Nfa& a);
// Same language, no epsilon moves, same state numbering.
Nfa without_epsilon(const Nfa& a);
Nfa complement(const Nfa& a);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa singleton(int alphabet, const Word& w);
Nfa universal(int alphabet);
Nfa empty_language(int alphabet);

bool is_empty(const Nfa& a);
std::optional<Word> shortest_word(const Nfa& a);

// Higman (scattered subword) order on words and the upward closure of a finite set of words.
bool subword_leq(const Word& small, const Word& big);
Nfa subword_upward_closure(int alphabet, const std::vector<Word>& basis);

// Words of length exactly n over the alphabet, in lexicographic order.
std::vector<Word> words_of_length(int alphabet, size_t n);

}  // namespace ptpn
