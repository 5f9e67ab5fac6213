#include "ptpn/sdtn.hpp"

#include "ptpn/core.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <future>
#include <map>
#include <numeric>
#include <set>

namespace ptpn {

namespace {

int index_of(const std::vector<std::string>& names, const std::string& n, const char* what) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw Error(std::string("unknown ") + what + " '" + n + "'");
  return int(it - names.begin());
}

void check_shape(const std::vector<std::string>& states, const std::vector<std::string>& places,
                 const std::vector<NetTransition>& ts) {
  for (const auto& t : ts) {
    if (t.from < 0 || t.from >= int(states.size()) || t.to < 0 || t.to >= int(states.size()))
      throw Error("transition " + t.name + " has an unknown control state");
    if (t.in.size() != places.size() || t.out.size() != places.size())
      throw Error("transition " + t.name + " has the wrong number of places");
    for (int x : t.in)
      if (x < 0) throw Error("negative arc weight in " + t.name);
    for (int x : t.out)
      if (x < 0) throw Error("negative arc weight in " + t.name);
  }
}

bool geq(const Counts& m, const Counts& need) {
  for (size_t p = 0; p < need.size(); ++p)
    if (m[p] < need[p]) return false;
  return true;
}

int add_sat(int a, int b) { return (a == kOmega || b == kOmega) ? kOmega : a + b; }

}  // namespace

int SdtnNet::state_index(const std::string& name) const { return index_of(states, name, "state"); }
int SdtnNet::place_index(const std::string& name) const { return index_of(places, name, "place"); }

std::vector<int> SdtnNet::transfer_sources() const {
  std::vector<int> s;
  for (auto [sr, tg] : st) s.push_back(sr);
  return s;
}

void SdtnNet::validate() const {
  check_shape(states, places, transitions);
  int np = int(places.size());
  for (size_t i = 0; i < st.size(); ++i) {
    auto [sr, tg] = st[i];
    if (sr < 0 || sr >= np || tg < 0 || tg >= np) throw Error("transfer pair refers to an unknown place");
    if (sr == tg) throw Error("transfer pair with equal source and target");
    for (size_t j = 0; j < i; ++j) {
      auto [s2, t2] = st[j];
      std::set<int> four{sr, tg, s2, t2};
      if (st[i] != st[j] && four.size() != 4) throw Error("transfer pairs are not disjoint");
    }
  }
  for (const auto& t : transitions) {
    if (!t.transfer) continue;
    for (auto [sr, tg] : st)
      if (t.in[sr] || t.out[sr] || t.in[tg] || t.out[tg])
        throw Error("transfer transition " + t.name + " touches a transfer place");
  }
}

bool enabled(const SdtnNet& net, const NetConfig& c, int t) {
  const auto& tr = net.transitions.at(t);
  return c.state == tr.from && geq(c.marking, tr.in);
}

NetConfig fire_sdtn(const SdtnNet& net, const NetConfig& c, int t) {
  if (!enabled(net, c, t)) throw Error("transition " + net.transitions[t].name + " is not enabled");
  const auto& tr = net.transitions[t];
  NetConfig n{tr.to, c.marking};
  for (size_t p = 0; p < n.marking.size(); ++p) n.marking[p] += tr.out[p] - tr.in[p];
  if (tr.transfer)
    for (auto [sr, tg] : net.st) {
      n.marking[tg] += n.marking[sr];
      n.marking[sr] = 0;
    }
  return n;
}

void InhibitorNet::validate() const {
  check_shape(states, places, transitions);
  if (inhibitor_place < 0 || inhibitor_place >= int(places.size())) throw Error("unknown inhibitor place");
  if (inhibited_transition < 0 || inhibited_transition >= int(transitions.size()))
    throw Error("unknown inhibited transition");
}

bool enabled(const InhibitorNet& net, const NetConfig& c, int t) {
  const auto& tr = net.transitions.at(t);
  if (c.state != tr.from || !geq(c.marking, tr.in)) return false;
  return t != net.inhibited_transition || c.marking[net.inhibitor_place] == 0;
}

NetConfig fire_inhibitor(const InhibitorNet& net, const NetConfig& c, int t) {
  if (!enabled(net, c, t)) throw Error("transition " + net.transitions[t].name + " is not enabled");
  const auto& tr = net.transitions[t];
  NetConfig n{tr.to, c.marking};
  for (size_t p = 0; p < n.marking.size(); ++p) n.marking[p] += tr.out[p] - tr.in[p];
  return n;
}

// ---- targets ----

Target Target::config(const NetConfig& c) {
  std::vector<Target> atoms{state_is(c.state)};
  for (size_t p = 0; p < c.marking.size(); ++p) atoms.push_back(exactly(int(p), c.marking[p]));
  return all(std::move(atoms));
}

bool Target::holds(int state, const Counts& m) const {
  switch (op) {
    case Op::atom_state:
      return state == index;
    case Op::atom_exactly:
      return m[index] == k;
    case Op::atom_at_least:
      return m[index] >= k;
    case Op::conj:
      for (const auto& t : kids)
        if (!t.holds(state, m)) return false;
      return true;
    case Op::disj:
      for (const auto& t : kids)
        if (t.holds(state, m)) return true;
      return false;
    case Op::neg:
      return !kids[0].holds(state, m);
    case Op::truth:
      return true;
  }
  return false;
}

namespace {

using Clause = std::vector<Target>;
using Dnf = std::vector<Clause>;

Dnf dnf_product(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Clause c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(c);
    }
  return out;
}

Dnf dnf(const Target& t, bool negated, int states) {
  using Op = Target::Op;
  switch (t.op) {
    case Op::truth:
      return negated ? Dnf{} : Dnf{Clause{}};
    case Op::atom_state:
      if (!negated) return {{t}};
      {
        Dnf out;
        for (int q = 0; q < states; ++q)
          if (q != t.index) out.push_back({Target::state_is(q)});
        return out;
      }
    case Op::atom_exactly:
      if (!negated) return {{t}};
      {
        Dnf out{{Target::at_least(t.index, t.k + 1)}};
        for (int j = 0; j < t.k; ++j) out.push_back({Target::exactly(t.index, j)});
        return out;
      }
    case Op::atom_at_least:
      if (!negated) return {{t}};
      {
        Dnf out;
        for (int j = 0; j < t.k; ++j) out.push_back({Target::exactly(t.index, j)});
        return out;
      }
    case Op::neg:
      return dnf(t.kids[0], !negated, states);
    case Op::conj:
    case Op::disj: {
      bool is_and = (t.op == Op::conj) != negated;
      if (is_and) {
        Dnf acc{Clause{}};
        for (const auto& k : t.kids) acc = dnf_product(acc, dnf(k, negated, states));
        return acc;
      }
      Dnf acc;
      for (const auto& k : t.kids) {
        Dnf d = dnf(k, negated, states);
        acc.insert(acc.end(), d.begin(), d.end());
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::vector<std::vector<Target>> to_dnf(const Target& t, int states) { return dnf(t, false, states); }

PlainTarget target_to_plain(const SdtnNet& net, const Target& target) {
  PlainTarget out{net, {}};
  SdtnNet& n = out.net;
  int np = int(net.places.size());
  int fin = int(n.states.size());
  n.states.push_back("fin");
  int ci = 0;
  for (const auto& clause : to_dnf(target, int(net.states.size()))) {
    ++ci;
    std::optional<int> state;
    std::vector<std::optional<int>> exact(np);
    std::vector<int> least(np, 0);
    bool sat = true;
    for (const auto& a : clause) {
      switch (a.op) {
        case Target::Op::atom_state:
          if (state && *state != a.index) sat = false;
          state = a.index;
          break;
        case Target::Op::atom_exactly:
          if (exact[a.index] && *exact[a.index] != a.k) sat = false;
          exact[a.index] = a.k;
          break;
        case Target::Op::atom_at_least:
          least[a.index] = std::max(least[a.index], a.k);
          break;
        default:
          break;
      }
    }
    Counts take(np, 0);
    for (int p = 0; p < np; ++p) {
      if (exact[p] && *exact[p] < least[p]) sat = false;
      take[p] = exact[p] ? *exact[p] : least[p];
    }
    if (!sat) continue;
    int chk = int(n.states.size());
    n.states.push_back("check" + std::to_string(ci));
    for (int q = 0; q < int(net.states.size()); ++q)
      if (!state || *state == q) n.transitions.push_back({"enter" + std::to_string(ci), q, chk, take, Counts(np, 0), false});
    for (int p = 0; p < np; ++p)
      if (!exact[p]) {
        Counts one(np, 0);
        one[p] = 1;
        n.transitions.push_back({"drain" + std::to_string(ci) + "_" + net.places[p], chk, chk, one, Counts(np, 0), false});
      }
    n.transitions.push_back({"leave" + std::to_string(ci), chk, fin, Counts(np, 0), Counts(np, 0), false});
  }
  out.final = {fin, Counts(np, 0)};
  return out;
}

// ---- reductions ----

InhibitorInstance sdtn_to_inhibitor(const SdtnInstance& in) {
  const SdtnNet& n = in.net;
  n.validate();
  int np = int(n.places.size()), nq = int(n.states.size());
  std::set<int> targets;
  for (const auto& t : n.transitions)
    if (t.transfer) targets.insert(t.to);
  bool lock = targets.size() > 1;

  InhibitorInstance out;
  InhibitorNet& m = out.net;
  m.states = n.states;
  int qi = nq;
  m.states.push_back("q_i");
  m.places = n.places;
  int pi = np;
  m.places.push_back("p_i");
  for (int q = 0; q < nq; ++q) m.places.push_back("p_" + n.states[q]);
  int p_lock = -1, p_done = -1;
  if (lock) {
    p_lock = int(m.places.size());
    m.places.push_back("p_lock");
    p_done = int(m.places.size());
    m.places.push_back("p_done");
  }
  int wp = int(m.places.size());
  auto widen = [&](const Counts& c) {
    Counts w(c);
    w.resize(wp, 0);
    int s = 0;
    for (auto [sr, tg] : n.st) s += c[sr];
    w[pi] = s;
    return w;
  };
  auto unit = [&](std::initializer_list<int> ps) {
    Counts c(wp, 0);
    for (int p : ps) c[p] += 1;
    return c;
  };
  for (const auto& t : n.transitions) {
    if (!t.transfer) {
      m.transitions.push_back({t.name, t.from, t.to, widen(t.in), widen(t.out), false});
      continue;
    }
    Counts o = widen(t.out);
    o[pi + 1 + t.to] += 1;
    if (lock) o[p_lock] += 1;
    m.transitions.push_back({t.name, t.from, qi, widen(t.in), o, false});
  }
  for (auto [sr, tg] : n.st)
    m.transitions.push_back({"drain_" + n.places[sr], qi, qi, unit({sr, pi}), unit({tg}), false});
  if (targets.empty()) {
    m.inhibited_transition = int(m.transitions.size());
    m.transitions.push_back({"t_i", qi, qi, Counts(wp, 0), Counts(wp, 0), false});
  } else if (!lock) {
    int q2 = *targets.begin();
    m.inhibited_transition = int(m.transitions.size());
    m.transitions.push_back({"t_i", qi, q2, unit({pi + 1 + q2}), Counts(wp, 0), false});
  } else {
    m.inhibited_transition = int(m.transitions.size());
    m.transitions.push_back({"t_i", qi, qi, unit({p_lock}), unit({p_done}), false});
    for (int q2 : targets)
      m.transitions.push_back({"return_" + n.states[q2], qi, q2, unit({pi + 1 + q2, p_done}), Counts(wp, 0), false});
  }
  m.inhibitor_place = pi;
  auto conf = [&](const NetConfig& c) {
    Counts w = widen(c.marking);
    return NetConfig{c.state, w};
  };
  out.init = conf(in.init);
  out.final = conf(in.final);
  return out;
}

SdtnInstance inhibitor_to_sdtn(const InhibitorInstance& in) {
  const InhibitorNet& n = in.net;
  n.validate();
  int np = int(n.places.size());
  SdtnInstance out;
  SdtnNet& m = out.net;
  m.states = n.states;
  m.places = n.places;
  int px = np;
  m.places.push_back("p_x");
  auto widen = [&](const Counts& c) {
    Counts w(c);
    w.push_back(0);
    return w;
  };
  int pi = n.inhibitor_place;
  m.st = {{pi, px}};
  for (size_t i = 0; i < n.transitions.size(); ++i) {
    const auto& t = n.transitions[i];
    if (int(i) != n.inhibited_transition) {
      m.transitions.push_back({t.name, t.from, t.to, widen(t.in), widen(t.out), false});
      continue;
    }
    if (t.in[pi] > 0) continue;  // needs a token on the place it tests for emptiness: never enabled
    Counts o = widen(t.out);
    if (o[pi] == 0) {
      m.transitions.push_back({t.name, t.from, t.to, widen(t.in), o, true});
      continue;
    }
    // outputs to the inhibitor place are issued by a follow-up step
    int mid = int(m.states.size());
    m.states.push_back(t.name + "_out");
    Counts rest(o.size(), 0);
    rest[pi] = o[pi];
    o[pi] = 0;
    m.transitions.push_back({t.name, t.from, mid, widen(t.in), o, true});
    m.transitions.push_back({t.name + "_out", mid, t.to, Counts(np + 1, 0), rest, false});
  }
  out.init = {in.init.state, widen(in.init.marking)};
  out.final = {in.final.state, widen(in.final.marking)};
  return out;
}

// ---- search ----

std::optional<NetConfig> apply_move(const LazySystem& sys, const NetConfig& c, const Move& mv) {
  if (mv.inhibitor >= 0 && c.marking[mv.inhibitor] != 0) return std::nullopt;
  if (!geq(c.marking, mv.in)) return std::nullopt;
  NetConfig n{mv.to, c.marking};
  for (int p = 0; p < sys.places; ++p) {
    if (n.marking[p] == kOmega) continue;
    n.marking[p] = add_sat(n.marking[p] - mv.in[p], mv.out[p]);
  }
  if (mv.transfer)
    for (auto [sr, tg] : sys.st) {
      n.marking[tg] = add_sat(n.marking[tg], n.marking[sr]);
      n.marking[sr] = 0;
    }
  return n;
}

namespace {

struct Node {
  NetConfig c;
  int parent;
  int label;
  bool via_transfer;
  int depth;
};

bool has_omega(const Counts& m) {
  return std::find(m.begin(), m.end(), kOmega) != m.end();
}

}  // namespace

ReachResult reach_bounded(const LazySystem& sys, const std::vector<NetConfig>& init,
                          const std::function<bool(const NetConfig&)>& target, const SearchBudget& budget) {
  ReachResult res;
  std::vector<bool> up = sys.upward;
  up.resize(sys.places, false);
  bool any_up = std::find(up.begin(), up.end(), true) != up.end();
  std::set<int> sources;
  for (auto [sr, tg] : sys.st) sources.insert(sr);

  std::vector<Node> nodes;
  std::map<NetConfig, int> seen;
  // key: control state and the non-upward part of the marking
  std::map<std::pair<int, Counts>, std::vector<int>> by_key;
  auto key_of = [&](const NetConfig& c) {
    Counts k;
    for (int p = 0; p < sys.places; ++p)
      if (!up[p]) k.push_back(c.marking[p]);
    return std::make_pair(c.state, k);
  };
  auto up_leq = [&](const Counts& a, const Counts& b) {
    for (int p = 0; p < sys.places; ++p)
      if (up[p] && a[p] > b[p]) return false;
    return true;
  };
  auto tokens = [&](const Counts& m) {
    long s = 0;
    for (int p = 0; p < sys.places; ++p)
      if (!up[p]) s += m[p];
    return s;
  };
  auto finish_yes = [&](int idx) {
    res.verdict = Verdict::yes;
    std::vector<int> labels;
    std::vector<NetConfig> path;
    bool concrete = true;
    for (int i = idx; i >= 0; i = nodes[i].parent) {
      path.push_back(nodes[i].c);
      if (has_omega(nodes[i].c.marking)) concrete = false;
      if (nodes[i].parent >= 0) labels.push_back(nodes[i].label);
    }
    std::reverse(path.begin(), path.end());
    std::reverse(labels.begin(), labels.end());
    res.path = path;
    if (concrete) res.witness = labels;
    res.explored = nodes.size();
    return res;
  };
  // returns the node index, or -1 when pruned
  auto insert = [&](NetConfig c, int parent, int label, bool via_transfer) -> int {
    if (any_up && parent >= 0) {
      // acceleration against ancestors with the same key
      auto key = key_of(c);
      bool transfer_in_loop = via_transfer;
      for (int a = parent; a >= 0; a = nodes[a].parent) {
        const NetConfig& anc = nodes[a].c;
        if (key_of(anc) == key && up_leq(anc.marking, c.marking) && anc.marking != c.marking) {
          for (int p = 0; p < sys.places; ++p)
            if (up[p] && anc.marking[p] < c.marking[p] && !(transfer_in_loop && sources.count(p))) {
              c.marking[p] = kOmega;
              res.accelerated = true;
            }
        }
        transfer_in_loop = transfer_in_loop || nodes[a].via_transfer;
      }
    }
    if (seen.count(c)) return -1;
    if (sys.dead && sys.dead(c)) return -1;
    if (any_up) {
      auto& bucket = by_key[key_of(c)];
      for (int j : bucket)
        if (up_leq(c.marking, nodes[j].c.marking)) return -1;
    }
    if (tokens(c.marking) > budget.bound) {
      res.truncated = true;
      return -1;
    }
    if (any_up) by_key[key_of(c)].push_back(int(nodes.size()));
    seen[c] = int(nodes.size());
    nodes.push_back({c, parent, label, via_transfer, parent < 0 ? 0 : nodes[parent].depth + 1});
    return int(nodes.size()) - 1;
  };

  // open nodes ordered by (priority, index); without a priority hook this is breadth-first by levels
  std::set<std::pair<long, int>> open;
  auto prio = [&](int idx) { return sys.priority ? sys.priority(nodes[idx].c, nodes[idx].depth) : long(nodes[idx].depth); };
  for (const auto& c : init) {
    int i = insert(c, -1, -1, false);
    if (i < 0) continue;
    if (target(nodes[i].c)) return finish_yes(i);
    open.insert({prio(i), i});
  }
  size_t batch_cap = sys.priority ? size_t(64) * std::max(1, budget.jobs) : SIZE_MAX;
  while (!open.empty()) {
    std::vector<int> frontier;
    long level = open.begin()->first;
    while (!open.empty() && open.begin()->first == level && frontier.size() < batch_cap) {
      frontier.push_back(open.begin()->second);
      open.erase(open.begin());
    }
    // move lists per frontier node, optionally computed in parallel
    std::vector<std::vector<Move>> moves(frontier.size());
    if (budget.jobs > 1 && frontier.size() > 1) {
      size_t chunk = (frontier.size() + budget.jobs - 1) / budget.jobs;
      std::vector<std::future<void>> fs;
      for (size_t start = 0; start < frontier.size(); start += chunk)
        fs.push_back(std::async(std::launch::async, [&, start] {
          for (size_t i = start; i < std::min(frontier.size(), start + chunk); ++i)
            moves[i] = sys.moves(nodes[frontier[i]].c.state);
        }));
      for (auto& f : fs) f.get();
    } else {
      for (size_t i = 0; i < frontier.size(); ++i) moves[i] = sys.moves(nodes[frontier[i]].c.state);
    }
    for (size_t i = 0; i < frontier.size(); ++i) {
      int from = frontier[i];
      for (const auto& mv : moves[i]) {
        auto n = apply_move(sys, nodes[from].c, mv);
        if (!n) continue;
        int idx = insert(*n, from, mv.label, mv.transfer);
        if (idx < 0) continue;
        if (target(nodes[idx].c)) return finish_yes(idx);
        open.insert({prio(idx), idx});
        if (nodes.size() >= budget.max_states) {
          res.explored = nodes.size();
          res.diagnostic = "state budget of " + std::to_string(budget.max_states) + " exhausted";
          return res;
        }
      }
    }
  }
  res.explored = nodes.size();
  res.exhausted = true;
  if (res.truncated) {
    res.diagnostic = "state space exhausted below the token bound " + std::to_string(budget.bound) +
                     " but some states exceeded it";
    return res;
  }
  res.verdict = Verdict::no;
  return res;
}

LazySystem as_system(const SdtnNet& net) {
  LazySystem sys;
  sys.places = int(net.places.size());
  sys.st = net.st;
  std::vector<std::vector<Move>> by_state(net.states.size());
  for (size_t t = 0; t < net.transitions.size(); ++t) {
    const auto& tr = net.transitions[t];
    by_state[tr.from].push_back({tr.to, tr.in, tr.out, tr.transfer, -1, int(t)});
  }
  sys.moves = [by_state](int q) { return by_state[q]; };
  return sys;
}

LazySystem as_system(const InhibitorNet& net) {
  LazySystem sys;
  sys.places = int(net.places.size());
  std::vector<std::vector<Move>> by_state(net.states.size());
  for (size_t t = 0; t < net.transitions.size(); ++t) {
    const auto& tr = net.transitions[t];
    int inh = int(t) == net.inhibited_transition ? net.inhibitor_place : -1;
    by_state[tr.from].push_back({tr.to, tr.in, tr.out, false, inh, int(t)});
  }
  sys.moves = [by_state](int q) { return by_state[q]; };
  return sys;
}

ReachResult reach_bounded(const SdtnNet& net, const std::vector<NetConfig>& init, const Target& target,
                          const SearchBudget& budget) {
  net.validate();
  auto r = reach_bounded(as_system(net), init, [&](const NetConfig& c) { return target.holds(c); }, budget);
  if (r.verdict == Verdict::unknown && r.exhausted && !init.empty()) {
    // every reachable state below the bound is known; a place-invariant bound within B makes it complete
    bool all_bounded = true;
    for (const auto& c : init) {
      auto b = structural_bounds(net, c.marking);
      if (!b || std::accumulate(b->begin(), b->end(), 0L) > budget.bound) all_bounded = false;
    }
    if (all_bounded) {
      r.verdict = Verdict::no;
      r.diagnostic += "; structurally bounded within the token bound";
    }
  }
  return r;
}

ReachResult reach_bounded(const InhibitorNet& net, const std::vector<NetConfig>& init, const Target& target,
                          const SearchBudget& budget) {
  net.validate();
  return reach_bounded(as_system(net), init, [&](const NetConfig& c) { return target.holds(c); }, budget);
}

// ---- place invariants ----

std::optional<Counts> structural_bounds(const SdtnNet& net, const Counts& init) {
  int np = int(net.places.size());
  // columns: one per transition and one per transfer pair; y.column + slack = 0 with y, slack >= 0
  std::vector<Counts> cols;
  for (const auto& t : net.transitions) {
    Counts c(np);
    for (int p = 0; p < np; ++p) c[p] = t.out[p] - t.in[p];
    cols.push_back(c);
  }
  for (auto [sr, tg] : net.st) {
    Counts c(np, 0);
    c[tg] += 1;
    c[sr] -= 1;
    cols.push_back(c);
  }
  int nc = int(cols.size());
  int rows = np + nc;
  // each row: (coefficients over columns, combination over rows)
  struct Row {
    std::vector<long> a;
    std::vector<long> y;
  };
  std::vector<Row> table;
  for (int r = 0; r < rows; ++r) {
    Row row{std::vector<long>(nc, 0), std::vector<long>(rows, 0)};
    row.y[r] = 1;
    if (r < np)
      for (int j = 0; j < nc; ++j) row.a[j] = cols[j][r];
    else
      row.a[r - np] = 1;
    table.push_back(row);
  }
  const size_t cap = 4000;
  for (int j = 0; j < nc; ++j) {
    std::vector<Row> keep, pos, neg;
    for (auto& r : table) (r.a[j] == 0 ? keep : (r.a[j] > 0 ? pos : neg)).push_back(r);
    for (const auto& p : pos)
      for (const auto& n : neg) {
        long fp = -n.a[j], fn = p.a[j];
        Row c{std::vector<long>(nc), std::vector<long>(rows)};
        long g = 0;
        for (int k = 0; k < nc; ++k) {
          c.a[k] = fp * p.a[k] + fn * n.a[k];
          g = std::gcd(g, std::abs(c.a[k]));
        }
        for (int k = 0; k < rows; ++k) {
          c.y[k] = fp * p.y[k] + fn * n.y[k];
          g = std::gcd(g, std::abs(c.y[k]));
        }
        if (g > 1) {
          for (auto& x : c.a) x /= g;
          for (auto& x : c.y) x /= g;
        }
        keep.push_back(c);
      }
    // drop rows whose support strictly contains another's
    std::vector<Row> minimal;
    for (size_t i = 0; i < keep.size(); ++i) {
      bool redundant = false;
      for (size_t k = 0; k < keep.size() && !redundant; ++k) {
        if (k == i) continue;
        bool sub = true, equal = true;
        for (int r = 0; r < rows && sub; ++r) {
          bool in_k = keep[k].y[r] != 0, in_i = keep[i].y[r] != 0;
          if (in_k && !in_i) sub = false;
          if (in_k != in_i) equal = false;
        }
        if (sub && (!equal || k < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(keep[i]);
    }
    table = std::move(minimal);
    if (table.size() > cap) return std::nullopt;
  }
  Counts bound(np, -1);
  for (const auto& r : table) {
    long weight = 0;
    for (int p = 0; p < np; ++p) weight += r.y[p] * init[p];
    for (int p = 0; p < np; ++p)
      if (r.y[p] > 0) {
        long b = weight / r.y[p];
        if (bound[p] < 0 || b < bound[p]) bound[p] = int(b);
      }
  }
  for (int b : bound)
    if (b < 0) return std::nullopt;
  return bound;
}

}  // namespace ptpn
