#include "ptpn/solver.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>

namespace ptpn {

namespace {

int top_age(const PtpnNet& net) { return net.cmax() + 1; }

// Adds t into an existing group, the center, or a new singleton group in any gap.
void add_token(const AbstractConfig& a, const AgedToken& t, bool center_ok, bool other_ok,
               std::set<AbstractConfig>& out) {
  if (center_ok) {
    AbstractConfig b = a;
    b.center.push_back(t);
    normalize(b.center);
    out.insert(std::move(b));
  }
  if (!other_ok) return;
  for (auto word : {&AbstractConfig::high, &AbstractConfig::low}) {
    const auto& w = a.*word;
    for (size_t i = 0; i < w.size(); ++i) {
      AbstractConfig b = a;
      (b.*word)[i].push_back(t);
      normalize((b.*word)[i]);
      out.insert(std::move(b));
    }
    for (size_t g = 0; g <= w.size(); ++g) {
      AbstractConfig b = a;
      (b.*word).insert((b.*word).begin() + g, Group{t});
      out.insert(std::move(b));
    }
  }
}

void drop_empty(std::vector<Group>& w) {
  w.erase(std::remove_if(w.begin(), w.end(), [](const Group& g) { return g.empty(); }), w.end());
}

bool remove_one(Group& g, const AgedToken& t) {
  auto it = std::find(g.begin(), g.end(), t);
  if (it == g.end()) return false;
  g.erase(it);
  return true;
}

// Groups g with aged_plus(g) == target.
std::vector<Group> unaged(const Group& target, int cmax) {
  std::vector<Group> out{{}};
  int top = cmax + 1;
  for (const auto& t : target) {
    std::vector<int> ages;
    if (t.age == 0) return {};
    ages.push_back(t.age - 1);
    if (t.age == top) ages.push_back(top);
    std::vector<Group> next;
    for (const auto& g : out)
      for (int a : ages) {
        Group h = g;
        h.push_back({t.place, a});
        next.push_back(h);
      }
    out = std::move(next);
  }
  std::set<Group> uniq;
  for (auto& g : out) {
    normalize(g);
    uniq.insert(g);
  }
  return {uniq.begin(), uniq.end()};
}

std::vector<std::vector<Group>> unaged_word(const std::vector<Group>& w, int cmax) {
  std::vector<std::vector<Group>> out{{}};
  for (const auto& g : w) {
    auto pre = unaged(g, cmax);
    std::vector<std::vector<Group>> next;
    for (const auto& prefix : out)
      for (const auto& p : pre) {
        auto x = prefix;
        x.push_back(p);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

size_t tokens_of(const AbstractConfig& a) { return a.token_count(); }

void discrete_pre(const PtpnNet& net, long v, const BudgetConfig& x, int ti, std::set<BudgetConfig>& out) {
  const auto& tr = net.transitions[ti];
  if (tr.to != x.a.state || x.budget + tr.cost > v) return;
  int top = top_age(net);

  // outputs either produce a token of x or land somewhere unconstrained
  std::set<AbstractConfig> ys;
  std::function<void(size_t, AbstractConfig&)> match_out = [&](size_t i, AbstractConfig& w) {
    if (i == tr.out.size()) {
      AbstractConfig y = w;
      drop_empty(y.high);
      drop_empty(y.low);
      ys.insert(std::move(y));
      return;
    }
    const auto& arc = tr.out[i];
    match_out(i + 1, w);
    auto try_group = [&](Group& g, bool center) {
      std::set<AgedToken> tried;
      for (size_t j = 0; j < g.size(); ++j) {
        AgedToken t = g[j];
        if (t.place != arc.place || !tried.insert(t).second) continue;
        if (center ? !arc.iv.contains(long(t.age)) : !arc.iv.models(t.age)) continue;
        remove_one(g, t);
        match_out(i + 1, w);
        g.push_back(t);
        normalize(g);
      }
    };
    for (size_t h = 0; h < w.high.size(); ++h) try_group(w.high[h], false);
    try_group(w.center, true);
    for (size_t l = 0; l < w.low.size(); ++l) try_group(w.low[l], false);
  };
  AbstractConfig start = x.a;
  match_out(0, start);

  for (const auto& y0 : ys) {
    // reads may coincide with distinct surviving tokens; the remaining arcs add tokens
    std::map<std::tuple<int, int, AgedToken>, int> reserved;
    std::vector<const Arc*> adds;
    for (const auto& arc : tr.in) adds.push_back(&arc);
    std::function<void(size_t)> pick_reads = [&](size_t i) {
      if (i == tr.read.size()) {
        std::set<AbstractConfig> cur{y0};
        for (const Arc* arc : adds) {
          std::set<AbstractConfig> next;
          for (const auto& c : cur)
            for (int a = 0; a <= top; ++a) {
              bool cen = arc->iv.contains(long(a)), oth = arc->iv.models(a);
              if (cen || oth) add_token(c, {arc->place, a}, cen, oth, next);
            }
          cur = std::move(next);
        }
        for (auto c : cur) {
          c.state = tr.from;
          out.insert({std::move(c), x.budget + tr.cost});
        }
        return;
      }
      const auto& arc = tr.read[i];
      adds.push_back(&arc);
      pick_reads(i + 1);
      adds.pop_back();
      auto try_group = [&](const Group& g, int region, int gi, bool center) {
        std::set<AgedToken> tried;
        for (const auto& t : g) {
          if (t.place != arc.place || !tried.insert(t).second) continue;
          if (center ? !arc.iv.contains(long(t.age)) : !arc.iv.models(t.age)) continue;
          auto key = std::make_tuple(region, gi, t);
          if (reserved[key] >= int(std::count(g.begin(), g.end(), t))) continue;
          reserved[key]++;
          pick_reads(i + 1);
          reserved[key]--;
        }
      };
      for (size_t h = 0; h < y0.high.size(); ++h) try_group(y0.high[h], 0, int(h), false);
      try_group(y0.center, 1, 0, true);
      for (size_t l = 0; l < y0.low.size(); ++l) try_group(y0.low[l], 2, int(l), false);
    };
    pick_reads(0);
  }
}

void any_token(const PtpnNet& net, const std::function<void(const AgedToken&)>& f, bool free_only = false) {
  for (int p = 0; p < int(net.places.size()); ++p) {
    if (free_only && net.is_cost_place(p)) continue;
    for (int a = 0; a <= top_age(net); ++a) f({p, a});
  }
}

}  // namespace

std::vector<BudgetConfig> minimal_elements(const PtpnNet& net, OrderKind kind, std::vector<BudgetConfig> xs) {
  std::set<BudgetConfig> uniq(xs.begin(), xs.end());
  std::vector<BudgetConfig> sorted(uniq.begin(), uniq.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const BudgetConfig& a, const BudgetConfig& b) {
    return tokens_of(a.a) < tokens_of(b.a);
  });
  std::vector<BudgetConfig> kept;
  for (const auto& c : sorted) {
    bool dominated = false;
    for (const auto& k : kept)
      if (leq(net, kind, k, c)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(c);
  }
  return kept;
}

std::vector<BudgetConfig> min_pre_a(const PtpnNet& net, long v, const BudgetConfig& x) {
  std::set<BudgetConfig> out;
  for (int t = 0; t < int(net.transitions.size()); ++t) discrete_pre(net, v, x, t, out);
  // type 1: the center became the front low group, or a group we do not need did
  if (x.a.center.empty()) {
    out.insert(x);  // a type 1 step on an empty center changes nothing
    if (!x.a.low.empty()) {
      BudgetConfig z = x;
      z.a.center = z.a.low.front();
      z.a.low.erase(z.a.low.begin());
      out.insert(z);
    }
    any_token(net, [&](const AgedToken& t) {
      BudgetConfig z = x;
      z.a.center = {t};
      out.insert(z);
    });
  }
  // type 2: the last high group aged into the (empty) center
  std::vector<Group> last;
  if (x.a.center.empty())
    any_token(net, [&](const AgedToken& t) { last.push_back({t}); });
  else
    last = unaged(x.a.center, net.cmax());
  for (const auto& g : last) {
    BudgetConfig z = x;
    z.a.center.clear();
    z.a.high.push_back(g);
    out.insert(z);
  }
  return minimal_elements(net, OrderKind::fc, {out.begin(), out.end()});
}

std::vector<BudgetConfig> min_pre_b(const PtpnNet& net, long v, const BudgetConfig& x) {
  std::set<BudgetConfig> out;
  int cmax = net.cmax();
  const auto& H = x.a.high;
  size_t m = H.size();
  auto low_pre = unaged_word(x.a.low, cmax);
  std::vector<Group> center_pre;
  if (x.a.center.empty())
    any_token(net, [&](const AgedToken& t) { center_pre.push_back({t}); }, true);
  else
    center_pre = unaged(x.a.center, cmax);
  for (size_t a = 0; a <= m; ++a)
    for (int c = 0; c <= (a < m ? 1 : 0); ++c) {
      std::vector<Group> head(H.begin(), H.begin() + a);
      std::vector<Group> moved(H.begin() + a + c, H.end());  // unaged low groups that became high
      auto high_pre = unaged_word(head, cmax);
      for (const auto& hp : high_pre)
        for (int four = 0; four <= 1; ++four) {
          if (!four && !x.a.center.empty()) continue;
          for (const auto& lp : low_pre) {
            std::vector<Group> mids = four ? center_pre : std::vector<Group>{Group{}};
            for (const auto& mid : mids) {
              BudgetConfig z;
              z.a.state = x.a.state;
              z.a.high = hp;
              if (c) z.a.center = H[a];
              z.a.low = moved;
              if (four) z.a.low.push_back(mid);
              z.a.low.insert(z.a.low.end(), lp.begin(), lp.end());
              z.budget = x.budget + storage_rate(net, z.a);
              if (z.budget <= v) out.insert(std::move(z));
            }
          }
        }
    }
  return minimal_elements(net, OrderKind::f, {out.begin(), out.end()});
}

BasisResult<BudgetConfig> saturate_pre_a(const PtpnNet& net, long v, const std::vector<BudgetConfig>& basis,
                                         size_t max_basis) {
  BasisResult<BudgetConfig> res;
  std::vector<BudgetConfig> elems;
  std::vector<bool> alive;
  std::deque<size_t> todo;
  auto covered = [&](const BudgetConfig& c) {
    for (size_t i = 0; i < elems.size(); ++i)
      if (alive[i] && leq(net, OrderKind::fc, elems[i], c)) return true;
    return false;
  };
  auto add = [&](const BudgetConfig& c) {
    if (covered(c)) return;
    for (size_t i = 0; i < elems.size(); ++i)
      if (alive[i] && leq(net, OrderKind::fc, c, elems[i])) alive[i] = false;
    elems.push_back(c);
    alive.push_back(true);
    todo.push_back(elems.size() - 1);
  };
  for (const auto& b : basis) add(b);
  while (!todo.empty()) {
    size_t i = todo.front();
    todo.pop_front();
    if (!alive[i]) continue;
    ++res.oracle_calls;
    for (const auto& p : min_pre_a(net, v, elems[i])) add(p);
    if (elems.size() > max_basis) {
      res.status = Verdict::unknown;
      res.diagnostic = "backward saturation exceeded " + std::to_string(max_basis) + " elements";
      break;
    }
  }
  for (size_t i = 0; i < elems.size(); ++i)
    if (alive[i]) res.basis.push_back(elems[i]);
  return res;
}

std::vector<BudgetConfig> restrict_to_cost_bound(const PtpnNet& net, long v, const BudgetConfig& k) {
  long have = cost_token_count(net, k.a);
  if (have > v) return {};
  std::vector<BudgetConfig> all{k};
  std::set<AbstractConfig> layer{k.a};
  for (long extra = have; extra < v; ++extra) {
    std::set<AbstractConfig> next;
    for (const auto& a : layer)
      for (int p = 0; p < int(net.places.size()); ++p) {
        if (!net.is_cost_place(p)) continue;
        for (int age = 0; age <= top_age(net); ++age) add_token(a, {p, age}, true, true, next);
      }
    if (next.empty()) break;
    for (const auto& a : next) all.push_back({a, k.budget});
    layer = std::move(next);
  }
  return minimal_elements(net, OrderKind::f, all);
}

ForwardResult forward_search(const PtpnNet& net, long v, const BudgetConfig& init, int q_fin, size_t max_states,
                             int bound) {
  ForwardResult res;
  struct Node {
    BudgetConfig c;
    int parent;
    AbstractStep step;
  };
  std::vector<Node> nodes{{init, -1, {}}};
  std::set<BudgetConfig> seen{init};
  auto finish = [&](int i) {
    BudgetTrace t;
    for (int j = i; j >= 0; j = nodes[j].parent) {
      t.configs.push_back(nodes[j].c);
      if (nodes[j].parent >= 0) t.steps.push_back(nodes[j].step);
    }
    std::reverse(t.configs.begin(), t.configs.end());
    std::reverse(t.steps.begin(), t.steps.end());
    res.verdict = Verdict::yes;
    res.trace = std::move(t);
    res.explored = nodes.size();
    return res;
  };
  if (init.a.state == q_fin) return finish(0);
  // control states with a path to q_fin
  std::vector<bool> live(net.states.size(), false);
  live[q_fin] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& t : net.transitions)
      if (live[t.to] && !live[t.from]) live[t.from] = grew = true;
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    BudgetConfig cur = nodes[i].c;
    for (auto& [n, step] : budget_successors(net, v, cur)) {
      if (!live[n.a.state]) continue;
      if (int(n.a.token_count()) > bound) {
        res.truncated = true;
        continue;
      }
      if (!seen.insert(n).second) continue;
      nodes.push_back({n, int(i), step});
      if (n.a.state == q_fin) return finish(int(nodes.size()) - 1);
      if (nodes.size() >= max_states) {
        res.explored = nodes.size();
        return res;
      }
    }
  }
  res.explored = nodes.size();
  res.verdict = res.truncated ? Verdict::unknown : Verdict::no;
  return res;
}

bool replays(const PtpnNet& net, long v, const BudgetTrace& t, int q_fin) {
  if (t.configs.size() != t.steps.size() + 1 || t.configs.empty()) return false;
  for (size_t i = 0; i < t.steps.size(); ++i) {
    bool ok = false;
    for (const auto& [n, st] : budget_successors(net, v, t.configs[i]))
      if (n == t.configs[i + 1] && st.kind == t.steps[i].kind && st.k == t.steps[i].k &&
          (st.kind != StepKind::discrete || st.disc.transition == t.steps[i].disc.transition)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return t.configs.back().a.state == q_fin && t.configs.back().budget >= 0;
}

namespace {

// Shared state of one phase-construction run.
struct PhaseContext {
  const PtpnNet& net;
  long v;
  int q_fin;
  SolverBudgets budgets;
  Alphabet sigma;
  SolveDiagnostics& diag;
  std::optional<BasisResult<BudgetConfig>> k_basis;

  PhaseContext(const PtpnNet& n, long v_, int q, const SolverBudgets& b, SolveDiagnostics& d)
      : net(n), v(v_), q_fin(q), budgets(b), sigma(alphabet_for(n, v_)), diag(d) {}

  SearchBudget search() const { return {budgets.max_states, budgets.bound, budgets.jobs}; }

  const BasisResult<BudgetConfig>& k() {
    if (!k_basis) {
      std::vector<BudgetConfig> f;
      for (long y = 0; y <= v; ++y) f.push_back({{q_fin, {}, {}, {}}, y});
      k_basis = saturate_pre_a(net, v, f, budgets.max_basis);
      diag.saturation_rounds = k_basis->oracle_calls;
    }
    return *k_basis;
  }

  OracleResult oracle(const Nfa& a, const std::vector<BudgetConfig>& u) {
    ++diag.oracle_calls;
    auto r = oracle_exists_init(net, v, a, u, search());
    diag.explored += r.explored;
    return r;
  }

  Verdict member(const BudgetConfig& s, const std::vector<BudgetConfig>& u) {
    if (u.empty()) return Verdict::no;
    if (s.budget > v || s.budget < 0) return Verdict::no;
    return oracle(singleton(sigma.size(), enc(sigma, s)), u).verdict;
  }

  // drop free tokens from a witness while it still reaches up(U)
  BudgetConfig shrink(BudgetConfig w, const std::vector<BudgetConfig>& u) {
    bool changed = true;
    size_t attempts = 0;
    while (changed && attempts < 16) {
      changed = false;
      auto variants = [&]() {
        std::vector<BudgetConfig> out;
        auto each = [&](Group& g, auto rebuild) {
          std::set<AgedToken> tried;
          for (const auto& t : Group(g)) {
            if (net.is_cost_place(t.place) || !tried.insert(t).second) continue;
            rebuild(t);
          }
        };
        for (size_t i = 0; i < w.a.high.size(); ++i)
          each(w.a.high[i], [&](const AgedToken& t) {
            BudgetConfig z = w;
            remove_one(z.a.high[i], t);
            drop_empty(z.a.high);
            out.push_back(z);
          });
        each(w.a.center, [&](const AgedToken& t) {
          BudgetConfig z = w;
          remove_one(z.a.center, t);
          out.push_back(z);
        });
        for (size_t i = 0; i < w.a.low.size(); ++i)
          each(w.a.low[i], [&](const AgedToken& t) {
            BudgetConfig z = w;
            remove_one(z.a.low[i], t);
            drop_empty(z.a.low);
            out.push_back(z);
          });
        return out;
      };
      for (const auto& z : variants()) {
        ++attempts;
        if (member(z, u) == Verdict::yes) {
          w = z;
          changed = true;
          break;
        }
        if (attempts >= 16) break;
      }
    }
    return w;
  }

  std::vector<BudgetConfig> enumerate_up_c(size_t r) {
    // configurations of r tokens with at most v on cost places, for every control state and budget
    if (r > 1) return {};
    std::set<AbstractConfig> shapes{AbstractConfig{}};
    for (size_t i = 0; i < r; ++i) {
      std::set<AbstractConfig> next;
      for (const auto& a : shapes) any_token(net, [&](const AgedToken& t) { add_token(a, t, true, true, next); });
      shapes = std::move(next);
    }
    std::vector<BudgetConfig> out;
    for (const auto& a : shapes) {
      if (cost_token_count(net, a) > v) continue;
      for (int q = 0; q < int(net.states.size()); ++q)
        for (long y = 0; y <= v; ++y) {
          BudgetConfig b{a, y};
          b.a.state = q;
          out.push_back(b);
        }
    }
    return out;
  }
};

}  // namespace

SolveResult cost_threshold(const ThresholdInstance& in, const SolverBudgets& budgets) {
  const PtpnNet& net = in.net;
  net.validate();
  if (in.q_init < 0 || in.q_init >= int(net.states.size()) || in.q_fin < 0 || in.q_fin >= int(net.states.size()))
    throw Error("control state out of range");
  if (in.v < 0) throw Error("negative threshold");
  SolveResult res;
  BudgetConfig init{encode(net, {in.q_init, in.init}), in.v};
  if (in.q_init == in.q_fin) {
    res.answer = Verdict::yes;
    res.witness = BudgetTrace{{init}, {}};
    res.diag.forward = Verdict::yes;
    return res;
  }

  bool forward_done = false;
  ForwardResult fwd;
  auto run_forward = [&]() {
    int bound = std::max(budgets.bound, int(init.a.token_count()));
    fwd = forward_search(net, in.v, init, in.q_fin, budgets.max_states, bound);
    res.diag.forward = fwd.verdict;
    res.diag.explored += fwd.explored;
    forward_done = true;
  };
  if (budgets.forward_first) {
    run_forward();
    if (fwd.verdict != Verdict::unknown) {
      res.answer = fwd.verdict;
      res.witness = fwd.trace;
      return res;
    }
  }

  PhaseContext ctx(net, in.v, in.q_fin, budgets, res.diag);
  Leq<BudgetConfig> f_leq = [&](const BudgetConfig& a, const BudgetConfig& b) { return leq(net, OrderKind::f, a, b); };
  Leq<BudgetConfig> fc_leq = [&](const BudgetConfig& a, const BudgetConfig& b) {
    return leq(net, OrderKind::fc, a, b);
  };
  PhaseStructure<BudgetConfig> s;
  s.leq = f_leq;
  s.init = init;
  s.max_phases = budgets.phase_iters;
  s.init_reaches_f_by_a = [&]() {
    const auto& k = ctx.k();
    if (in_upward(init, k.basis, fc_leq)) return Verdict::yes;
    return k.status == Verdict::yes ? Verdict::no : Verdict::unknown;
  };
  s.pre_a_star_f_over_c = [&]() {
    const auto& k = ctx.k();
    BasisResult<BudgetConfig> r;
    r.status = k.status;
    r.diagnostic = k.diagnostic;
    std::vector<BudgetConfig> all;
    for (const auto& e : k.basis) {
      auto part = restrict_to_cost_bound(net, in.v, e);
      all.insert(all.end(), part.begin(), part.end());
    }
    r.basis = minimal_elements(net, OrderKind::f, all);
    return r;
  };
  s.pre_b = [&](const std::vector<BudgetConfig>& xs) {
    BasisResult<BudgetConfig> r;
    std::vector<BudgetConfig> all;
    for (const auto& x : xs) {
      auto part = min_pre_b(net, in.v, x);
      all.insert(all.end(), part.begin(), part.end());
    }
    r.basis = minimal_elements(net, OrderKind::f, all);
    return r;
  };
  s.pre_a_star_member = [&](const BudgetConfig& z, const std::vector<BudgetConfig>& u) { return ctx.member(z, u); };
  s.pre_a_star_outside = [&](const std::vector<BudgetConfig>& x, const std::vector<BudgetConfig>& u) {
    OutsideAnswer<BudgetConfig> ans;
    if (u.empty()) {
      ans.exists = Verdict::no;
      return ans;
    }
    Nfa a4 = intersect(complement(automaton_uc(net, in.v, x)), automaton_cost_bounded(net, in.v));
    auto r = ctx.oracle(a4, u);
    ans.exists = r.verdict;
    if (r.verdict == Verdict::yes && r.witness) ans.witness = ctx.shrink(*r.witness, u);
    return ans;
  };
  s.enumerate_up_c = [&](size_t r) { return ctx.enumerate_up_c(r); };

  auto phase = phase_reachable(s);
  res.diag.phase = phase.verdict;
  res.diag.phases = phase.phases;
  res.diag.chain_sizes = phase.chain_sizes;
  if (!phase.diagnostic.empty()) res.diag.note = phase.diagnostic;

  if (!forward_done) run_forward();
  if (fwd.verdict == Verdict::yes) {
    if (phase.verdict == Verdict::no) res.diag.consistent = false;
    res.answer = Verdict::yes;
    res.witness = fwd.trace;
  } else if (fwd.verdict == Verdict::no) {
    if (phase.verdict == Verdict::yes) res.diag.consistent = false;
    res.answer = Verdict::no;
  } else if (phase.verdict == Verdict::yes) {
    // a yes must come with a replayable run
    res.answer = Verdict::unknown;
    res.diag.note = "phase construction answered yes but no witness run was found within the state budget";
  } else {
    res.answer = phase.verdict;
  }
  if (!res.diag.consistent) res.diag.note = "phase construction disagrees with the forward search";
  return res;
}

std::string to_string(const OptimalResult& r) {
  switch (r.kind) {
    case OptimalResult::Kind::finite: return std::to_string(r.value);
    case OptimalResult::Kind::infinity: return "infinity";
    case OptimalResult::Kind::unknown: return "unknown";
  }
  return "?";
}

OptimalResult cost_optimal(const PtpnNet& net, int q_init, int q_fin, const SolverBudgets& budgets,
                           const Marking& init) {
  OptimalResult res;
  PtpnNet zero = net;
  std::fill(zero.place_cost.begin(), zero.place_cost.end(), 0);
  for (auto& t : zero.transitions) t.cost = 0;
  auto reach = cost_threshold({zero, q_init, q_fin, 0, init}, budgets);
  if (reach.answer == Verdict::no) {
    res.kind = OptimalResult::Kind::infinity;
    return res;
  }
  if (reach.answer == Verdict::unknown) {
    res.note = "reachability pre-check inconclusive";
    return res;
  }
  for (long v = 0; v <= budgets.vmax; ++v) {
    auto r = cost_threshold({net, q_init, q_fin, v, init}, budgets);
    res.scan.push_back(r.answer);
    if (r.answer == Verdict::yes) {
      res.kind = OptimalResult::Kind::finite;
      res.value = v;
      res.witness = r.witness;
      return res;
    }
    if (r.answer == Verdict::unknown) {
      res.note = "threshold " + std::to_string(v) + " inconclusive" + (r.diag.note.empty() ? "" : ": " + r.diag.note);
      return res;
    }
  }
  res.note = "no threshold up to " + std::to_string(budgets.vmax) + " succeeded";
  return res;
}

ThresholdInstance translate_inhibitor_to_ptpn(const InhibitorNet& in, const NetConfig& init, const NetConfig& final) {
  in.validate();
  for (const auto* c : {&init, &final})
    if (std::any_of(c->marking.begin(), c->marking.end(), [](int x) { return x != 0; }))
      throw Error("initial and final markings must be empty");
  auto fresh = [](const std::vector<std::string>& names, std::string n) {
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "'";
    return n;
  };
  ThresholdInstance out;
  PtpnNet& net = out.net;
  net.states = in.states;
  net.places = in.places;
  net.place_cost.assign(in.places.size(), 1);
  int q_done = int(net.states.size()), q_w1 = q_done + 1, q_w2 = q_done + 2;
  net.states.push_back(fresh(in.states, "fin_done"));
  net.states.push_back(fresh(in.states, "wait1"));
  net.states.push_back(fresh(in.states, "wait2"));
  int p_w1 = int(net.places.size()), p_w2 = p_w1 + 1;
  net.places.push_back(fresh(in.places, "wait1"));
  net.places.push_back(fresh(in.places, "wait2"));
  net.place_cost.push_back(0);
  net.place_cost.push_back(0);

  Interval any = Interval::from(0, true), zero = Interval::make(0, true, 0, true);
  auto arcs = [](const Counts& c, const std::function<Interval(int)>& iv) {
    std::vector<Arc> out;
    for (int p = 0; p < int(c.size()); ++p)
      for (int k = 0; k < c[p]; ++k) out.push_back({p, iv(p)});
    return out;
  };
  for (int t = 0; t < int(in.transitions.size()); ++t) {
    const auto& tr = in.transitions[t];
    auto outs = arcs(tr.out, [&](int) { return zero; });
    if (t != in.inhibited_transition) {
      auto ins = arcs(tr.in, [&](int p) { return p == in.inhibitor_place ? zero : any; });
      net.transitions.push_back({tr.name, tr.from, tr.to, ins, {}, outs, 0});
    } else {
      net.transitions.push_back({tr.name + "_start", tr.from, q_w1, arcs(tr.in, [&](int) { return any; }), {},
                                 {{p_w1, zero}}, 0});
      net.transitions.push_back(
          {tr.name + "_finish", q_w1, tr.to, {{p_w1, Interval::make(0, false, 1, true)}}, {}, outs, 0});
    }
  }
  net.transitions.push_back({"fin_wait", final.state, q_w2, {}, {}, {{p_w2, zero}}, 0});
  net.transitions.push_back({"fin_leave", q_w2, q_done, {{p_w2, Interval::make(1, true, 1, true)}}, {}, {}, 0});
  out.q_init = init.state;
  out.q_fin = q_done;
  out.v = 0;
  return out;
}

ThresholdInstance translate_tpn_to_ptpn(const PtpnNet& tpn, int q_init, int q_fin) {
  ThresholdInstance out;
  out.net = tpn;
  out.net.place_cost.assign(tpn.places.size(), 0);
  for (auto& t : out.net.transitions) t.cost = 0;
  out.q_init = q_init;
  out.q_fin = q_fin;
  out.v = 0;
  return out;
}

}  // namespace ptpn
