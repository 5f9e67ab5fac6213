#include "ptpn/encoder.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <deque>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace ptpn {

// ---- alphabet and encoding ----

Alphabet alphabet_for(const PtpnNet& net, long v) {
  if (v < 0) throw Error("negative budget");
  return {int(net.places.size()), net.cmax() + 2, int(net.states.size()), v};
}

std::string Alphabet::name(int s, const PtpnNet& net) const {
  if (is_token(s)) {
    auto t = token_of(s);
    return "(" + net.places[t.place] + "," + std::to_string(t.age) + ")";
  }
  if (is_state(s)) {
    auto [q, y] = state_of(s);
    return "(" + net.states[q] + "," + std::to_string(y) + ")";
  }
  if (s == hash()) return "#";
  if (s == dollar()) return "$";
  return "?";
}

std::string to_string(const Word& w, const Alphabet& sigma, const PtpnNet& net) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += sigma.name(w[i], net);
  }
  return out;
}

namespace {

void put_group(const Alphabet& sigma, Group g, Word& w) {
  normalize(g);
  for (const auto& t : g) {
    if (t.place < 0 || t.place >= sigma.places || t.age < 0 || t.age >= sigma.ages)
      throw Error("token outside the alphabet");
    w.push_back(sigma.token(t.place, t.age));
  }
}

void put_word(const Alphabet& sigma, const std::vector<Group>& groups, Word& w) {
  for (size_t i = groups.size(); i-- > 0;) {
    put_group(sigma, groups[i], w);
    if (i) w.push_back(sigma.hash());
  }
}

}  // namespace

Word enc(const Alphabet& sigma, const BudgetConfig& b) {
  if (b.budget < 0 || b.budget > sigma.v) throw Error("budget outside the alphabet");
  if (b.a.state < 0 || b.a.state >= sigma.states) throw Error("state outside the alphabet");
  Word w{sigma.state(b.a.state, b.budget)};
  put_word(sigma, b.a.low, w);
  w.push_back(sigma.dollar());
  put_group(sigma, b.a.center, w);
  w.push_back(sigma.dollar());
  put_word(sigma, b.a.high, w);
  return w;
}

BudgetConfig dec(const Alphabet& sigma, const Word& w) {
  if (w.empty() || !sigma.is_state(w[0])) throw Error("encoding must start with a control pair");
  BudgetConfig b;
  auto [q, y] = sigma.state_of(w[0]);
  b.a.state = q;
  b.budget = y;
  std::vector<std::vector<Group>> parts(1);
  std::vector<Group>* cur = &parts.back();
  cur->emplace_back();
  for (size_t i = 1; i < w.size(); ++i) {
    int s = w[i];
    if (sigma.is_token(s)) {
      cur->back().push_back(sigma.token_of(s));
    } else if (s == sigma.hash()) {
      if (parts.size() == 2) throw Error("# inside the center");
      cur->emplace_back();
    } else if (s == sigma.dollar()) {
      if (parts.size() == 3) throw Error("more than two $");
      parts.emplace_back();
      cur = &parts.back();
      cur->emplace_back();
    } else {
      throw Error("unexpected symbol in encoding");
    }
  }
  if (parts.size() != 3) throw Error("encoding needs two $");
  auto word = [](std::vector<Group> gs) {
    if (gs.size() == 1 && gs[0].empty()) return std::vector<Group>{};
    for (auto& g : gs) {
      if (g.empty()) throw Error("empty group in encoding");
      normalize(g);
    }
    std::reverse(gs.begin(), gs.end());
    return gs;
  };
  b.a.low = word(parts[0]);
  b.a.center = parts[1][0];
  normalize(b.a.center);
  b.a.high = word(parts[2]);
  return b;
}

// ---- configuration automata ----

namespace {

struct Builder {
  const PtpnNet& net;
  Alphabet sigma;
  Nfa a;

  Builder(const PtpnNet& n, long v) : net(n), sigma(alphabet_for(n, v)), a(sigma.size()) {}

  bool free_symbol(int s) const { return !net.is_cost_place(sigma.token_of(s).place); }

  // A sorted group containing `need` (sorted symbols); other symbols only if `extras` accepts them.
  void group(int from, int to, const Word& need, const std::function<bool(int)>& extras, bool allow_empty) {
    std::map<std::pair<size_t, int>, int> ids;
    std::vector<std::pair<size_t, int>> todo;
    auto get = [&](size_t j, int last) {
      auto key = std::make_pair(j, last);
      auto it = ids.find(key);
      if (it != ids.end()) return it->second;
      int id = a.add_state(false);
      ids[key] = id;
      todo.push_back(key);
      return id;
    };
    int entry = get(0, -1);
    a.add_edge(from, Nfa::epsilon, entry);
    while (!todo.empty()) {
      auto [j, last] = todo.back();
      todo.pop_back();
      int s = ids[{j, last}];
      if (j == need.size() && (last >= 0 || allow_empty)) a.add_edge(s, Nfa::epsilon, to);
      for (int sym = std::max(last, 0); sym < sigma.tokens(); ++sym) {
        if (j < need.size() && need[j] == sym) a.add_edge(s, sym, get(j + 1, sym));
        if (extras(sym)) a.add_edge(s, sym, get(j, sym));
      }
    }
  }

  // Groups separated by #; the required groups (in encoding order) cover an increasing subsequence.
  void groups(int from, int to, const std::vector<Word>& required, const std::function<bool(int)>& extras) {
    size_t r = required.size();
    std::vector<int> start(r + 1), after(r + 1);
    for (size_t i = 0; i <= r; ++i) {
      start[i] = a.add_state(false);
      after[i] = a.add_state(false);
    }
    a.add_edge(from, Nfa::epsilon, start[0]);
    for (size_t i = 0; i <= r; ++i) {
      group(start[i], after[i], {}, extras, false);
      if (i < r) group(start[i], after[i + 1], required[i], extras, false);
      a.add_edge(after[i], sigma.hash(), start[i]);
    }
    a.add_edge(after[r], Nfa::epsilon, to);
    if (r == 0) a.add_edge(from, Nfa::epsilon, to);
  }

  static Word sorted_symbols(const Alphabet& sigma, Group g) {
    Word w;
    put_group(sigma, std::move(g), w);
    return w;
  }
};

}  // namespace

Nfa automaton_uc(const PtpnNet& net, long v, const std::vector<BudgetConfig>& cs) {
  Builder b(net, v);
  int init = b.a.add_state(false);
  b.a.initial = {init};
  int acc = b.a.add_state(true);
  auto free = [&](int s) { return b.free_symbol(s); };
  for (const auto& c : cs) {
    int s1 = b.a.add_state(false);
    b.a.add_edge(init, b.sigma.state(c.a.state, c.budget), s1);
    std::vector<Word> low, high;
    for (size_t i = c.a.low.size(); i-- > 0;) low.push_back(Builder::sorted_symbols(b.sigma, c.a.low[i]));
    for (size_t i = c.a.high.size(); i-- > 0;) high.push_back(Builder::sorted_symbols(b.sigma, c.a.high[i]));
    int s2 = b.a.add_state(false);
    b.groups(s1, s2, low, free);
    int s3 = b.a.add_state(false);
    b.a.add_edge(s2, b.sigma.dollar(), s3);
    int s4 = b.a.add_state(false);
    b.group(s3, s4, Builder::sorted_symbols(b.sigma, c.a.center), free, true);
    int s5 = b.a.add_state(false);
    b.a.add_edge(s4, b.sigma.dollar(), s5);
    b.groups(s5, acc, high, free);
  }
  return b.a;
}

Nfa automaton_universal(const PtpnNet& net, long v) {
  Builder b(net, v);
  int init = b.a.add_state(false);
  b.a.initial = {init};
  int s1 = b.a.add_state(false);
  for (int q = 0; q < int(net.states.size()); ++q)
    for (long y = 0; y <= v; ++y) b.a.add_edge(init, b.sigma.state(q, y), s1);
  auto any = [](int) { return true; };
  int s2 = b.a.add_state(false), s3 = b.a.add_state(false), s4 = b.a.add_state(false), s5 = b.a.add_state(false);
  int acc = b.a.add_state(true);
  b.groups(s1, s2, {}, any);
  b.a.add_edge(s2, b.sigma.dollar(), s3);
  b.group(s3, s4, {}, any, true);
  b.a.add_edge(s4, b.sigma.dollar(), s5);
  b.groups(s5, acc, {}, any);
  return b.a;
}

Nfa automaton_cost_bounded(const PtpnNet& net, long v) {
  Alphabet sigma = alphabet_for(net, v);
  // counts cost-place symbols up to v
  Nfa count(sigma.size());
  for (long i = 0; i <= v; ++i) count.add_state(true);
  count.initial = {0};
  for (long i = 0; i <= v; ++i)
    for (int s = 0; s < sigma.size(); ++s) {
      bool cost = sigma.is_token(s) && net.is_cost_place(sigma.token_of(s).place);
      if (!cost)
        count.add_edge(int(i), s, int(i));
      else if (i < v)
        count.add_edge(int(i), s, int(i + 1));
    }
  return intersect(automaton_universal(net, v), count);
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::init: return "Init";
    case Mode::init_low: return "InitLow";
    case Mode::init_zero: return "InitZero";
    case Mode::sim: return "Sim";
    case Mode::disc: return "Disc";
    case Mode::type1_1: return "Type1.1";
    case Mode::type1_2: return "Type1.2";
    case Mode::type2_1: return "Type2.1";
    case Mode::type2_2: return "Type2.2";
    case Mode::final1: return "Final1";
    case Mode::final2: return "Final2";
    case Mode::done: return "Done";
  }
  return "?";
}

// ---- the generated net ----

struct SdtnEncoding::Impl {
  PtpnNet net;
  long v = 0;
  Alphabet sigma;
  Nfa a;
  BudgetConfig target;
  std::vector<CoverSlot> slots;
  int low_groups = 0, high_groups = 0;
  int rmax = 0;
  int pa = 0;  // places * ages
  std::vector<bool> coreach;
  std::vector<long> max_tokens;  // most token symbols on a path to acceptance, LONG_MAX if unbounded
  std::vector<long> min_rest;    // fewest symbols on a path to acceptance

  mutable std::mutex mu;
  mutable std::map<EncState, int> ids;
  mutable std::vector<EncState> states;
  mutable std::map<int, std::vector<Move>> cache;

  int top() const { return sigma.ages - 1; }
  int zero(int p, int k) const { return p * sigma.ages + k; }
  int low(int p, int k) const { return zero(p, k) + pa; }
  int high(int p, int k) const { return zero(p, k) + 2 * pa; }
  int debt(int p, int k) const { return zero(p, k) + 3 * pa; }
  int places() const { return 4 * pa; }

  int intern(const EncState& s) const {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = int(states.size());
    ids[s] = id;
    states.push_back(s);
    return id;
  }

  bool accepting(int astate) const { return astate == -2 || (astate >= 0 && a.accepting[astate]); }

  // automaton edges usable from a state (-1: from every initial state)
  std::vector<std::pair<int, int>> edges(int astate) const {
    std::vector<std::pair<int, int>> out;
    if (astate == -2) return out;
    std::vector<int> from = astate == -1 ? a.initial : std::vector<int>{astate};
    for (int s : from)
      for (auto [sym, t] : a.edges[s])
        if (coreach[t]) out.push_back({sym, t});
    return out;
  }

  long remaining_tokens(int astate) const {
    if (astate == -2) return 0;
    if (astate >= 0) return max_tokens[astate];
    long m = 0;
    for (int s : a.initial)
      if (coreach[s]) m = std::max(m, max_tokens[s]);
    return m;
  }

  // first unset slot per distinct token of a target group
  std::vector<int> open_slots(uint64_t flags, int group) const {
    std::vector<int> out;
    std::set<AgedToken> seen;
    for (size_t j = 0; j < slots.size(); ++j)
      if (slots[j].group == group && !(flags >> j & 1) && seen.insert(slots[j].token).second) out.push_back(int(j));
    return out;
  }

  bool has_open(uint64_t flags, int group) const { return !open_slots(flags, group).empty(); }

  // cover decisions for a low group: off, or an open target group below the bound
  std::vector<int> low_choices(uint64_t flags, int bound) const {
    std::vector<int> out{0};
    for (int i = 1; i < bound; ++i)
      if (has_open(flags, i)) out.push_back(i);
    return out;
  }
  std::vector<int> high_choices(uint64_t flags, int bound) const {
    std::vector<int> out{0};
    for (int i = -high_groups; i < bound; ++i)
      if (has_open(flags, i)) out.push_back(i);
    return out;
  }

  void prepare() {
    pa = int(net.places.size()) * sigma.ages;
    for (const auto& t : net.transitions) {
      std::map<int, int> r;
      for (const auto& arc : t.read) rmax = std::max(rmax, ++r[arc.place]);
    }
    // co-reachable automaton states
    int n = a.size();
    coreach.assign(n, false);
    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < n; ++s)
      for (auto [sym, t] : a.edges[s]) rev[t].push_back(s);
    std::vector<int> todo;
    for (int s = 0; s < n; ++s)
      if (a.accepting[s]) {
        coreach[s] = true;
        todo.push_back(s);
      }
    while (!todo.empty()) {
      int s = todo.back();
      todo.pop_back();
      for (int p : rev[s])
        if (!coreach[p]) {
          coreach[p] = true;
          todo.push_back(p);
        }
    }
    min_rest.assign(n, LONG_MAX);
    std::deque<int> q;
    for (int s = 0; s < n; ++s)
      if (a.accepting[s]) {
        min_rest[s] = 0;
        q.push_back(s);
      }
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (int p : rev[s])
        if (min_rest[p] == LONG_MAX) {
          min_rest[p] = min_rest[s] + 1;
          q.push_back(p);
        }
    }
    // longest token count to acceptance; a cycle among co-reachable states makes it unbounded
    max_tokens.assign(n, -1);
    std::vector<int> mark(n, 0);
    std::function<long(int)> longest = [&](int s) -> long {
      if (mark[s] == 2) return max_tokens[s];
      if (mark[s] == 1) return LONG_MAX;
      mark[s] = 1;
      long best = 0;
      for (auto [sym, t] : a.edges[s]) {
        if (!coreach[t]) continue;
        long sub = longest(t);
        long w = sigma.is_token(sym) ? 1 : 0;
        best = std::max(best, sub == LONG_MAX ? LONG_MAX : sub + w);
      }
      mark[s] = 2;
      return max_tokens[s] = best;
    };
    for (int s = 0; s < n; ++s)
      if (coreach[s]) longest(s);
    // cycles found while a state was on the stack are marked LONG_MAX only on that path; propagate
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (!coreach[s] || max_tokens[s] == LONG_MAX) continue;
        for (auto [sym, t] : a.edges[s])
          if (coreach[t] && max_tokens[t] == LONG_MAX) {
            max_tokens[s] = LONG_MAX;
            changed = true;
            break;
          }
      }
    }
  }

  std::vector<Move> generate(const EncState& c) const;
  void discrete(const EncState& c, std::vector<Move>& out) const;
};

namespace {

Counts zeros(int n) { return Counts(n, 0); }

}  // namespace

std::vector<Move> SdtnEncoding::Impl::generate(const EncState& c) const {
  std::vector<Move> out;
  int np = places();
  auto go = [&](EncState next, Counts in, Counts outc, int label, bool transfer = false) {
    out.push_back({intern(next), std::move(in), std::move(outc), transfer, -1, label});
  };
  auto with = [&](auto f) {
    EncState n = c;
    f(n);
    return n;
  };
  int nlow = low_groups;
  switch (c.mode) {
    case Mode::init:
      for (auto [sym, t] : edges(c.astate)) {
        if (!sigma.is_state(sym)) continue;
        auto [q, y] = sigma.state_of(sym);
        for (int cv : low_choices(0, nlow + 1))
          go(with([&](EncState& n) {
               n.mode = Mode::init_low;
               n.nstate = q;
               n.budget = y;
               n.astate = t;
               n.cover = cv;
               n.low_bound = cv ? cv : nlow + 1;
             }),
             zeros(np), zeros(np), sym);
      }
      break;
    case Mode::init_low:
      for (auto [sym, t] : edges(c.astate)) {
        if (sigma.is_token(sym)) {
          auto tok = sigma.token_of(sym);
          Counts o = zeros(np);
          o[low(tok.place, tok.age)] = 1;
          go(with([&](EncState& n) { n.astate = t; }), zeros(np), o, sym);
          if (c.cover)
            for (int j : open_slots(c.flags, c.cover))
              if (slots[j].token == tok)
                go(with([&](EncState& n) {
                     n.astate = t;
                     n.flags |= uint64_t(1) << j;
                   }),
                   zeros(np), zeros(np), sym);
        } else if (sym == sigma.hash()) {
          for (int cv : low_choices(c.flags, c.low_bound))
            go(with([&](EncState& n) {
                 n.astate = t;
                 n.cover = cv;
                 if (cv) n.low_bound = cv;
               }),
               zeros(np), zeros(np), sym);
        } else if (sym == sigma.dollar()) {
          go(with([&](EncState& n) {
               n.astate = t;
               n.mode = Mode::init_zero;
               n.cover = 0;
             }),
             zeros(np), zeros(np), sym);
        }
      }
      break;
    case Mode::init_zero:
      for (auto [sym, t] : edges(c.astate)) {
        if (sigma.is_token(sym)) {
          auto tok = sigma.token_of(sym);
          Counts o = zeros(np);
          o[zero(tok.place, tok.age)] = 1;
          go(with([&](EncState& n) { n.astate = t; }), zeros(np), o, sym);
        } else if (sym == sigma.dollar()) {
          go(with([&](EncState& n) {
               n.astate = t;
               n.mode = Mode::sim;
             }),
             zeros(np), zeros(np), sym);
        }
      }
      break;
    case Mode::sim:
      go(with([&](EncState& n) { n.mode = Mode::disc; }), zeros(np), zeros(np), -1);
      for (int cv : low_choices(c.flags, c.low_bound))
        go(with([&](EncState& n) {
             n.mode = Mode::type1_1;
             n.cover = cv;
             if (cv) n.low_bound = cv;
           }),
           zeros(np), zeros(np), -1);
      go(with([&](EncState& n) { n.mode = Mode::final1; }), zeros(np), zeros(np), -1);
      break;
    case Mode::disc:
      discrete(c, out);
      break;
    case Mode::type1_1:
      if (c.cover)
        for (int j : open_slots(c.flags, c.cover)) {
          Counts in = zeros(np);
          in[zero(slots[j].token.place, slots[j].token.age)] = 1;
          go(with([&](EncState& n) { n.flags |= uint64_t(1) << j; }), in, zeros(np), -1);
        }
      go(with([&](EncState& n) { n.mode = Mode::type1_2; }), zeros(np), zeros(np), -1);
      break;
    case Mode::type1_2:
      go(with([&](EncState& n) {
           n.mode = Mode::type2_1;
           n.cover = 0;
         }),
         zeros(np), zeros(np), -1, true);
      break;
    case Mode::type2_1:
      for (int p = 0; p < int(net.places.size()); ++p)
        for (int k = 0; k <= top(); ++k) {
          Counts in = zeros(np), o = zeros(np);
          in[high(p, k)] = 1;
          o[zero(p, std::min(k + 1, top()))] = 1;
          go(c, in, o, -1);
        }
      if (c.astate != -2) go(with([&](EncState& n) { n.mode = Mode::type2_2; }), zeros(np), zeros(np), -1);
      go(with([&](EncState& n) { n.mode = Mode::sim; }), zeros(np), zeros(np), -1);
      break;
    case Mode::type2_2:
      for (auto [sym, t] : edges(c.astate)) {
        if (sigma.is_token(sym)) {
          auto tok = sigma.token_of(sym);
          int pk = zero(tok.place, tok.age);
          Counts o = zeros(np), d = zeros(np);
          o[zero(tok.place, std::min(tok.age + 1, top()))] = 1;
          d[debt(tok.place, tok.age)] = 1;
          go(with([&](EncState& n) { n.astate = t; }), zeros(np), o, sym);
          go(with([&](EncState& n) { n.astate = t; }), d, zeros(np), sym);
          if (c.rdebt[pk] > 0)
            go(with([&](EncState& n) {
                 n.astate = t;
                 n.rdebt[pk] -= 1;
               }),
               zeros(np), o, sym);
        } else if (sym == sigma.hash()) {
          go(with([&](EncState& n) {
               n.astate = t;
               n.mode = Mode::sim;
             }),
             zeros(np), zeros(np), sym);
        }
      }
      if (accepting(c.astate))
        go(with([&](EncState& n) {
             n.astate = -2;
             n.mode = Mode::sim;
           }),
           zeros(np), zeros(np), -1);
      break;
    case Mode::final1:
      for (int i = -high_groups; i <= 0; ++i)
        for (int j : open_slots(c.flags, i)) {
          Counts in = zeros(np);
          const auto& tok = slots[j].token;
          in[i == 0 ? zero(tok.place, tok.age) : high(tok.place, tok.age)] = 1;
          go(with([&](EncState& n) { n.flags |= uint64_t(1) << j; }), in, zeros(np), -1);
        }
      for (int cv : high_choices(c.flags, 0))
        go(with([&](EncState& n) {
             n.mode = Mode::final2;
             n.cover = cv;
             n.high_bound = cv;
           }),
           zeros(np), zeros(np), -1);
      break;
    case Mode::final2:
      for (auto [sym, t] : edges(c.astate)) {
        if (sigma.is_token(sym)) {
          auto tok = sigma.token_of(sym);
          int pk = zero(tok.place, tok.age);
          Counts d = zeros(np);
          d[debt(tok.place, tok.age)] = 1;
          go(with([&](EncState& n) { n.astate = t; }), d, zeros(np), sym);
          for (int paid = 0; paid <= (c.rdebt[pk] > 0 ? 1 : 0); ++paid) {
            if (c.cover)
              for (int j : open_slots(c.flags, c.cover))
                if (slots[j].token == tok)
                  go(with([&](EncState& n) {
                       n.astate = t;
                       n.rdebt[pk] -= paid;
                       n.flags |= uint64_t(1) << j;
                     }),
                     zeros(np), zeros(np), sym);
            if (!net.is_cost_place(tok.place))
              go(with([&](EncState& n) {
                   n.astate = t;
                   n.rdebt[pk] -= paid;
                 }),
                 zeros(np), zeros(np), sym);
          }
        } else if (sym == sigma.hash()) {
          for (int cv : high_choices(c.flags, c.high_bound))
            go(with([&](EncState& n) {
                 n.astate = t;
                 n.cover = cv;
                 if (cv) n.high_bound = cv;
               }),
               zeros(np), zeros(np), sym);
        }
      }
      if (accepting(c.astate))
        go(with([&](EncState& n) {
             n.astate = -2;
             n.mode = Mode::done;
             n.cover = 0;
           }),
           zeros(np), zeros(np), -1);
      break;
    case Mode::done:
      break;
  }
  return out;
}

void SdtnEncoding::Impl::discrete(const EncState& c, std::vector<Move>& out) const {
  int np = places();
  std::set<std::tuple<int, Counts, Counts>> seen;
  for (const auto& tr : net.transitions) {
    if (tr.from != c.nstate || tr.cost > c.budget) continue;
    // reserved low tokens available for reading, per (place, age)
    std::map<int, int> reserved;
    for (size_t j = 0; j < slots.size(); ++j)
      if (slots[j].group > 0 && (c.flags >> j & 1)) reserved[zero(slots[j].token.place, slots[j].token.age)]++;

    Counts in = zeros(np), o = zeros(np);
    std::vector<int> in_debt(pa, 0), read_debt(pa, 0), read_res(pa, 0);
    EncState next = c;
    next.mode = Mode::sim;
    next.nstate = tr.to;
    next.budget = c.budget - tr.cost;
    bool can_borrow = c.astate != -2;

    size_t ni = tr.in.size(), nr = tr.read.size(), no = tr.out.size();
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i < ni) {
        const auto& arc = tr.in[i];
        for (int k = 0; k <= top(); ++k) {
          if (arc.iv.contains(long(k))) {
            in[zero(arc.place, k)]++;
            rec(i + 1);
            in[zero(arc.place, k)]--;
          }
          if (!arc.iv.models(k)) continue;
          for (int where : {low(arc.place, k), high(arc.place, k)}) {
            in[where]++;
            rec(i + 1);
            in[where]--;
          }
          if (can_borrow) {
            in_debt[zero(arc.place, k)]++;
            o[debt(arc.place, k)]++;
            rec(i + 1);
            o[debt(arc.place, k)]--;
            in_debt[zero(arc.place, k)]--;
          }
        }
        return;
      }
      if (i < ni + nr) {
        const auto& arc = tr.read[i - ni];
        for (int k = 0; k <= top(); ++k) {
          int pk = zero(arc.place, k);
          if (arc.iv.contains(long(k))) {
            in[pk]++;
            o[pk]++;
            rec(i + 1);
            in[pk]--;
            o[pk]--;
          }
          if (!arc.iv.models(k)) continue;
          for (int where : {low(arc.place, k), high(arc.place, k)}) {
            in[where]++;
            o[where]++;
            rec(i + 1);
            in[where]--;
            o[where]--;
          }
          if (read_res[pk] < reserved[pk]) {
            read_res[pk]++;
            rec(i + 1);
            read_res[pk]--;
          }
          if (can_borrow) {
            read_debt[pk]++;
            rec(i + 1);
            read_debt[pk]--;
          }
        }
        return;
      }
      if (i < ni + nr + no) {
        const auto& arc = tr.out[i - ni - nr];
        for (int k = 0; k <= top(); ++k) {
          if (arc.iv.contains(long(k))) {
            o[zero(arc.place, k)]++;
            rec(i + 1);
            o[zero(arc.place, k)]--;
          }
          if (!arc.iv.models(k)) continue;
          for (int where : {low(arc.place, k), high(arc.place, k)}) {
            o[where]++;
            rec(i + 1);
            o[where]--;
          }
          // a created low token reserved for a low target group
          for (int g = 1; g <= low_groups; ++g)
            for (int j : open_slots(next.flags, g))
              if (slots[j].token == AgedToken{arc.place, k}) {
                EncState saved = next;
                next.flags |= uint64_t(1) << j;
                next.low_bound = std::min(next.low_bound, g);
                rec(i + 1);
                next = saved;
              }
        }
        return;
      }
      EncState fin = next;
      for (int pk = 0; pk < pa; ++pk) fin.rdebt[pk] = std::max(c.rdebt[pk] - in_debt[pk], read_debt[pk]);
      int to = intern(fin);
      if (seen.insert({to, in, o}).second) out.push_back({to, in, o, false, -1, -1});
    };
    rec(0);
  }
}

SdtnEncoding::SdtnEncoding(const PtpnNet& net, long v, const Nfa& automaton, const BudgetConfig& target)
    : impl_(std::make_shared<Impl>()) {
  Impl& s = *impl_;
  s.net = net;
  s.v = v;
  s.sigma = alphabet_for(net, v);
  if (automaton.alphabet != s.sigma.size()) throw Error("automaton alphabet does not match the net");
  s.a = without_epsilon(automaton);
  s.target = target;
  s.high_groups = int(target.a.high.size());
  s.low_groups = int(target.a.low.size());
  for (int h = 0; h < s.high_groups; ++h)
    for (const auto& t : target.a.high[h]) s.slots.push_back({h - s.high_groups, t});
  for (const auto& t : target.a.center) s.slots.push_back({0, t});
  for (int l = 0; l < s.low_groups; ++l)
    for (const auto& t : target.a.low[l]) s.slots.push_back({l + 1, t});
  if (s.slots.size() > 64) throw Error("target configuration has more than 64 tokens");
  for (const auto& sl : s.slots)
    if (sl.token.age >= s.sigma.ages || sl.token.place >= s.sigma.places) throw Error("target token out of range");
  s.prepare();
}

SdtnEncoding build_sdtn(const PtpnNet& net, long v, const Nfa& automaton, const BudgetConfig& target) {
  return SdtnEncoding(net, v, automaton, target);
}

int SdtnEncoding::place_count() const { return impl_->places(); }
int SdtnEncoding::zero_place(int p, int k) const { return impl_->zero(p, k); }
int SdtnEncoding::low_place(int p, int k) const { return impl_->low(p, k); }
int SdtnEncoding::high_place(int p, int k) const { return impl_->high(p, k); }
int SdtnEncoding::debt_place(int p, int k) const { return impl_->debt(p, k); }
const std::vector<CoverSlot>& SdtnEncoding::slots() const { return impl_->slots; }
int SdtnEncoding::rmax() const { return impl_->rmax; }
const Alphabet& SdtnEncoding::alphabet() const { return impl_->sigma; }

std::vector<std::string> SdtnEncoding::place_names() const {
  const Impl& s = *impl_;
  std::vector<std::string> names(s.places());
  for (int p = 0; p < int(s.net.places.size()); ++p)
    for (int k = 0; k <= s.top(); ++k) {
      std::string tail = "(" + s.net.places[p] + "," + std::to_string(k) + ")";
      names[s.zero(p, k)] = "zero" + tail;
      names[s.low(p, k)] = "low" + tail;
      names[s.high(p, k)] = "high" + tail;
      names[s.debt(p, k)] = "idebt" + tail;
    }
  return names;
}

std::vector<std::pair<int, int>> SdtnEncoding::transfer() const {
  std::vector<std::pair<int, int>> st;
  for (int p = 0; p < int(impl_->net.places.size()); ++p)
    for (int k = 0; k <= impl_->top(); ++k) st.push_back({impl_->zero(p, k), impl_->low(p, k)});
  return st;
}

LazySystem SdtnEncoding::system() const {
  LazySystem sys;
  auto s = impl_;
  sys.places = s->places();
  sys.st = transfer();
  sys.upward.assign(sys.places, false);
  for (int p = 0; p < int(s->net.places.size()); ++p)
    if (!s->net.is_cost_place(p))
      for (int k = 0; k <= s->top(); ++k) {
        sys.upward[s->zero(p, k)] = true;
        sys.upward[s->low(p, k)] = true;
        sys.upward[s->high(p, k)] = true;
      }
  sys.moves = [s](int control) {
    std::lock_guard<std::mutex> lock(s->mu);
    auto it = s->cache.find(control);
    if (it != s->cache.end()) return it->second;
    EncState c = s->states.at(control);
    auto moves = s->generate(c);
    s->cache[control] = moves;
    return moves;
  };
  // greedy order: configurations closer to a complete word with all target tokens covered come first
  sys.priority = [s](const NetConfig& c, int depth) {
    EncState st;
    {
      std::lock_guard<std::mutex> lock(s->mu);
      st = s->states.at(c.state);
    }
    long rest = 0;
    if (st.astate >= 0) rest = s->min_rest[st.astate];
    else if (st.astate == -1)
      for (int i : s->a.initial) rest = std::max(rest, s->min_rest[i] == LONG_MAX ? 0 : s->min_rest[i] + 1);
    long open = long(s->slots.size()) - std::popcount(st.flags);
    return long(depth) + 4 * (rest + open);
  };
  sys.dead = [s](const NetConfig& c) {
    long owed = 0;
    for (int pk = 0; pk < s->pa; ++pk) owed += c.marking[s->pa * 3 + pk];
    EncState st;
    long remaining;
    {
      std::lock_guard<std::mutex> lock(s->mu);
      st = s->states.at(c.state);
    }
    // budgets only decrease
    if (st.mode != Mode::init && st.budget < s->target.budget) return true;
    for (int r : st.rdebt) owed += r;
    if (owed == 0) return false;
    remaining = s->remaining_tokens(st.astate);
    return remaining != LONG_MAX && owed > remaining;
  };
  return sys;
}

NetConfig SdtnEncoding::initial() const {
  EncState c;
  c.rdebt.assign(impl_->pa, 0);
  c.low_bound = impl_->low_groups + 1;
  std::lock_guard<std::mutex> lock(impl_->mu);
  return {impl_->intern(c), Counts(impl_->places(), 0)};
}

bool SdtnEncoding::is_final(const NetConfig& c) const {
  const Impl& s = *impl_;
  EncState st;
  {
    std::lock_guard<std::mutex> lock(s.mu);
    st = s.states.at(c.state);
  }
  if (st.mode != Mode::done || st.nstate != s.target.a.state || st.budget != s.target.budget) return false;
  if (s.slots.size() && st.flags != (s.slots.size() == 64 ? ~uint64_t(0) : (uint64_t(1) << s.slots.size()) - 1))
    return false;
  for (int r : st.rdebt)
    if (r) return false;
  for (int p = 0; p < int(s.net.places.size()); ++p)
    for (int k = 0; k <= s.top(); ++k) {
      if (c.marking[s.debt(p, k)]) return false;
      if (s.net.is_cost_place(p) && (c.marking[s.zero(p, k)] || c.marking[s.low(p, k)] || c.marking[s.high(p, k)]))
        return false;
    }
  return true;
}

EncState SdtnEncoding::control(int id) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->states.at(id);
}

EncodingStats SdtnEncoding::stats() const {
  const Impl& s = *impl_;
  EncodingStats st;
  {
    std::lock_guard<std::mutex> lock(s.mu);
    st.controls = s.states.size();
  }
  double modes = 12, nstate = double(s.net.states.size()) * double(s.v + 1), astate = s.a.size() + 2;
  double flags = std::pow(2.0, double(s.slots.size()));
  double cover = s.low_groups + s.high_groups + 2, lb = s.low_groups + 2, hb = s.high_groups + 2;
  double rd = std::pow(double(s.rmax + 1), double(s.pa));
  st.control_bound = modes * nstate * astate * flags * cover * lb * hb * rd;
  return st;
}

Word SdtnEncoding::word_of(const std::vector<int>& labels) {
  Word w;
  for (int l : labels)
    if (l >= 0) w.push_back(l);
  return w;
}

OracleResult oracle_exists_init(const PtpnNet& net, long v, const Nfa& automaton, const std::vector<BudgetConfig>& u,
                                const SearchBudget& budget) {
  OracleResult res;
  res.verdict = Verdict::no;
  for (const auto& target : u) {
    SdtnEncoding e(net, v, automaton, target);
    auto r = reach_bounded(e.system(), {e.initial()}, [&](const NetConfig& c) { return e.is_final(c); }, budget);
    res.explored += r.explored;
    if (r.verdict == Verdict::yes) {
      res.verdict = Verdict::yes;
      if (r.witness) res.witness = dec(e.alphabet(), SdtnEncoding::word_of(*r.witness));
      res.diagnostic.clear();
      return res;
    }
    if (r.verdict == Verdict::unknown) {
      res.verdict = Verdict::unknown;
      if (!res.diagnostic.empty()) res.diagnostic += "; ";
      res.diagnostic += r.diagnostic.empty() ? "search inconclusive" : r.diagnostic;
    }
  }
  return res;
}

}  // namespace ptpn
