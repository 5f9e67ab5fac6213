#include "ptpn/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ptpn {

int Nfa::add_state(bool accept) {
  edges.emplace_back();
  accepting.push_back(accept);
  return size() - 1;
}

void Nfa::add_edge(int from, int symbol, int to) { edges[from].push_back({symbol, to}); }

void Nfa::add_any(int from, int to) {
  for (int s = 0; s < alphabet; ++s) add_edge(from, s, to);
}

std::vector<int> Nfa::closure(std::vector<int> states) const {
  std::vector<bool> seen(size(), false);
  std::vector<int> todo;
  for (int s : states)
    if (!seen[s]) {
      seen[s] = true;
      todo.push_back(s);
    }
  while (!todo.empty()) {
    int s = todo.back();
    todo.pop_back();
    for (auto [sym, t] : edges[s])
      if (sym == epsilon && !seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
  }
  std::vector<int> out;
  for (int s = 0; s < size(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

std::vector<int> Nfa::step(const std::vector<int>& states, int symbol) const {
  std::vector<int> next;
  for (int s : states)
    for (auto [sym, t] : edges[s])
      if (sym == symbol) next.push_back(t);
  return closure(next);
}

bool Nfa::accepts(const Word& w) const {
  std::vector<int> cur = closure(initial);
  for (int sym : w) {
    if (sym < 0 || sym >= alphabet) return false;
    cur = step(cur, sym);
    if (cur.empty()) return false;
  }
  for (int s : cur)
    if (accepting[s]) return true;
  return false;
}

Nfa determinize(const Nfa& a) {
  Nfa d(a.alphabet);
  std::map<std::vector<int>, int> index;
  std::deque<std::vector<int>> todo;
  auto get = [&](const std::vector<int>& set) {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    bool acc = false;
    for (int s : set) acc = acc || a.accepting[s];
    int id = d.add_state(acc);
    index[set] = id;
    todo.push_back(set);
    return id;
  };
  d.initial = {get(a.closure(a.initial))};
  while (!todo.empty()) {
    std::vector<int> set = todo.front();
    todo.pop_front();
    int from = index[set];
    for (int sym = 0; sym < a.alphabet; ++sym) {
      int to = get(a.step(set, sym));
      d.add_edge(from, sym, to);
    }
  }
  return d;
}

Nfa without_epsilon(const Nfa& a) {
  Nfa r(a.alphabet);
  for (int s = 0; s < a.size(); ++s) {
    bool acc = false;
    for (int c : a.closure({s})) acc = acc || a.accepting[c];
    r.add_state(acc);
  }
  for (int s = 0; s < a.size(); ++s)
    for (int c : a.closure({s}))
      for (auto [sym, t] : a.edges[c])
        if (sym != Nfa::epsilon) r.add_edge(s, sym, t);
  r.initial = a.initial;
  return r;
}

Nfa complement(const Nfa& a) {
  Nfa d = determinize(a);
  for (size_t i = 0; i < d.accepting.size(); ++i) d.accepting[i] = !d.accepting[i];
  return d;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  Nfa p(std::max(a.alphabet, b.alphabet));
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;
  std::deque<std::pair<std::vector<int>, std::vector<int>>> todo;
  // product of the subset constructions, explored on demand
  auto get = [&](const std::vector<int>& x, const std::vector<int>& y) {
    auto key = std::make_pair(x, y);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    bool ax = false, ay = false;
    for (int s : x) ax = ax || a.accepting[s];
    for (int s : y) ay = ay || b.accepting[s];
    int id = p.add_state(ax && ay);
    index[key] = id;
    todo.push_back(key);
    return id;
  };
  p.initial = {get(a.closure(a.initial), b.closure(b.initial))};
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    int from = index[{x, y}];
    for (int sym = 0; sym < p.alphabet; ++sym) {
      auto nx = sym < a.alphabet ? a.step(x, sym) : std::vector<int>{};
      auto ny = sym < b.alphabet ? b.step(y, sym) : std::vector<int>{};
      if (nx.empty() || ny.empty()) continue;
      p.add_edge(from, sym, get(nx, ny));
    }
  }
  return p;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  Nfa u(std::max(a.alphabet, b.alphabet));
  for (const Nfa* part : {&a, &b}) {
    int base = u.size();
    for (int s = 0; s < part->size(); ++s) u.add_state(part->accepting[s]);
    for (int s = 0; s < part->size(); ++s)
      for (auto [sym, t] : part->edges[s]) u.add_edge(base + s, sym, base + t);
    for (int s : part->initial) u.initial.push_back(base + s);
  }
  return u;
}

Nfa singleton(int alphabet, const Word& w) {
  Nfa a(alphabet);
  int s = a.add_state(w.empty());
  a.initial = {s};
  for (size_t i = 0; i < w.size(); ++i) {
    int t = a.add_state(i + 1 == w.size());
    a.add_edge(s, w[i], t);
    s = t;
  }
  return a;
}

Nfa universal(int alphabet) {
  Nfa a(alphabet);
  int s = a.add_state(true);
  a.add_any(s, s);
  a.initial = {s};
  return a;
}

Nfa empty_language(int alphabet) {
  Nfa a(alphabet);
  a.initial = {a.add_state(false)};
  return a;
}

std::optional<Word> shortest_word(const Nfa& a) {
  // breadth-first search over states; epsilon edges cost nothing (0-1 BFS)
  std::vector<int> dist(a.size(), -1), parent(a.size(), -1), via(a.size(), 0);
  std::deque<int> q;
  for (int s : a.initial)
    if (dist[s] < 0) {
      dist[s] = 0;
      q.push_back(s);
    }
  std::vector<bool> done(a.size(), false);
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (done[s]) continue;
    done[s] = true;
    if (a.accepting[s]) {
      Word w;
      for (int x = s; parent[x] >= 0; x = parent[x])
        if (via[x] != Nfa::epsilon) w.push_back(via[x]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (auto [sym, t] : a.edges[s]) {
      int nd = dist[s] + (sym == Nfa::epsilon ? 0 : 1);
      if (dist[t] < 0 || nd < dist[t]) {
        dist[t] = nd;
        parent[t] = s;
        via[t] = sym;
        if (sym == Nfa::epsilon)
          q.push_front(t);
        else
          q.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_empty(const Nfa& a) { return !shortest_word(a).has_value(); }

bool subword_leq(const Word& small, const Word& big) {
  size_t i = 0;
  for (size_t j = 0; j < big.size() && i < small.size(); ++j)
    if (big[j] == small[i]) ++i;
  return i == small.size();
}

Nfa subword_upward_closure(int alphabet, const std::vector<Word>& basis) {
  Nfa u(alphabet);
  for (const auto& w : basis) {
    int s = u.add_state(w.empty());
    u.initial.push_back(s);
    u.add_any(s, s);
    for (size_t i = 0; i < w.size(); ++i) {
      int t = u.add_state(i + 1 == w.size());
      u.add_edge(s, w[i], t);
      u.add_any(t, t);
      s = t;
    }
  }
  return u;
}

std::vector<Word> words_of_length(int alphabet, size_t n) {
  std::vector<Word> out{Word{}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int s = 0; s < alphabet; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace ptpn
