#include "ptpn/aptpn.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ptpn {

void normalize(Group& g) { std::sort(g.begin(), g.end()); }

Group merged(const Group& a, const Group& b) {
  Group r;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool group_includes(const Group& big, const Group& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Group group_minus(const Group& big, const Group& small) {
  Group r;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(r));
  return r;
}

Group aged_plus(const Group& g, int cmax) {
  Group r = g;
  for (auto& t : r) t.age = std::min(t.age + 1, cmax + 1);
  normalize(r);
  return r;
}

size_t AbstractConfig::token_count() const {
  size_t n = center.size();
  for (const auto& g : high) n += g.size();
  for (const auto& g : low) n += g.size();
  return n;
}

std::string to_string(const Group& g, const PtpnNet& net) {
  std::string s = "[";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += "(" + net.places[g[i].place] + "," + std::to_string(g[i].age) + ")";
  }
  return s + "]";
}

std::string to_string(const AbstractConfig& a, const PtpnNet& net) {
  std::string s = net.states[a.state] + " <";
  for (size_t i = 0; i < a.high.size(); ++i) s += (i ? " " : "") + to_string(a.high[i], net);
  s += " | " + to_string(a.center, net) + " |";
  for (const auto& g : a.low) s += " " + to_string(g, net);
  return s + ">";
}

std::string to_string(const AbstractStep& s, const PtpnNet& net) {
  switch (s.kind) {
    case StepKind::discrete: return net.transitions[s.disc.transition].name;
    case StepKind::type1: return "type1";
    case StepKind::type2: return "type2";
    case StepKind::type3: return "type3(" + std::to_string(s.k) + ")";
    case StepKind::type4: return "type4(" + std::to_string(s.k) + ")";
  }
  return "?";
}

AbstractConfig encode(const PtpnNet& net, const ConcreteConfig& c) {
  Rational lo(2, 5), hi(3, 5);
  for (const auto& t : c.marking) {
    Rational f = frac_of(t.age);
    if (f >= lo && f <= hi) throw Error("configuration is not in 2/5-form");
  }
  int top = net.cmax() + 1;
  auto abstract = [&](const Marking& m) {
    Group g;
    for (const auto& t : m) g.push_back({t.place, static_cast<int>(std::min<long>(floor_of(t.age), top))});
    normalize(g);
    return g;
  };
  Decomposition d = decompose(c.marking);
  AbstractConfig a;
  a.state = c.state;
  for (const auto& m : d.high) a.high.push_back(abstract(m));
  a.center = abstract(d.center);
  for (const auto& m : d.low) a.low.push_back(abstract(m));
  return a;
}

namespace {

struct Slot {
  int src = -1;  // source group index, -1 for a group made of outputs only
  Group g;
  std::vector<int> outs;  // output arcs placed here
};

bool token_matches(Region r, int age, const Interval& iv) { return r == Region::center ? iv.contains(long(age)) : iv.models(age); }

}  // namespace

std::vector<std::pair<AbstractConfig, AbstractStep>> discrete_successors(const PtpnNet& net, const AbstractConfig& a,
                                                                          int t) {
  std::vector<std::pair<AbstractConfig, AbstractStep>> result;
  const auto& tr = net.transitions.at(t);
  if (tr.from != a.state) return result;
  int top = net.cmax() + 1;

  std::vector<TokenRef> occ;
  for (size_t i = 0; i < a.high.size(); ++i)
    for (const auto& tok : a.high[i]) occ.push_back({Region::high, int(i), tok});
  for (const auto& tok : a.center) occ.push_back({Region::center, 0, tok});
  for (size_t i = 0; i < a.low.size(); ++i)
    for (const auto& tok : a.low[i]) occ.push_back({Region::low, int(i), tok});

  std::vector<Arc> arcs = tr.in;
  arcs.insert(arcs.end(), tr.read.begin(), tr.read.end());
  size_t nin = tr.in.size();

  // output age/region choices per arc: (age, center?)
  std::vector<std::vector<std::pair<int, bool>>> out_choices(tr.out.size());
  for (size_t o = 0; o < tr.out.size(); ++o)
    for (int k = 0; k <= top; ++k) {
      if (tr.out[o].iv.contains(long(k))) out_choices[o].push_back({k, true});
      if (tr.out[o].iv.models(k)) out_choices[o].push_back({k, false});
    }

  std::set<AbstractConfig> seen;
  std::set<std::vector<int>> seen_pick;
  std::vector<int> pick(arcs.size(), -1);
  std::vector<char> used(occ.size(), 0);

  auto emit_binding = [&]() {
    // canonical binding key: occurrence indices of identical tokens collapse via sorting inside groups
    std::vector<int> key;
    for (size_t i = 0; i < arcs.size(); ++i) key.push_back(pick[i]);
    std::sort(key.begin(), key.begin() + nin);
    std::sort(key.begin() + nin, key.end());
    if (!seen_pick.insert(key).second) return;

    AbstractStep step;
    step.kind = StepKind::discrete;
    step.disc.transition = t;
    std::vector<Group> hi_in(a.high.size()), lo_in(a.low.size());
    Group c_in;
    for (size_t i = 0; i < arcs.size(); ++i) {
      const TokenRef& r = occ[pick[i]];
      (i < nin ? step.disc.in : step.disc.read).push_back(r);
      if (i >= nin) continue;
      if (r.region == Region::high) hi_in[r.group].push_back(r.token);
      else if (r.region == Region::low) lo_in[r.group].push_back(r.token);
      else c_in.push_back(r.token);
    }
    std::vector<Slot> hs, ls;
    for (size_t i = 0; i < a.high.size(); ++i) {
      normalize(hi_in[i]);
      Group rest = group_minus(a.high[i], hi_in[i]);
      if (!rest.empty()) hs.push_back({int(i), rest, {}});
    }
    for (size_t i = 0; i < a.low.size(); ++i) {
      normalize(lo_in[i]);
      Group rest = group_minus(a.low[i], lo_in[i]);
      if (!rest.empty()) ls.push_back({int(i), rest, {}});
    }
    normalize(c_in);
    Group center = group_minus(a.center, c_in);

    std::vector<std::pair<int, bool>> outsel(tr.out.size());
    std::function<void(size_t, std::vector<Slot>&, std::vector<Slot>&, Group&, std::vector<int>&)> place_out;
    place_out = [&](size_t o, std::vector<Slot>& H, std::vector<Slot>& L, Group& C, std::vector<int>& center_outs) {
      if (o == tr.out.size()) {
        AbstractConfig r;
        r.state = tr.to;
        for (const auto& s : H) r.high.push_back(s.g);
        r.center = C;
        for (const auto& s : L) r.low.push_back(s.g);
        for (auto& g : r.high) normalize(g);
        for (auto& g : r.low) normalize(g);
        normalize(r.center);
        if (!seen.insert(r).second) return;
        AbstractStep st = step;
        st.disc.high_map.assign(a.high.size(), -1);
        st.disc.low_map.assign(a.low.size(), -1);
        st.disc.out.assign(tr.out.size(), TokenRef{});
        for (size_t i = 0; i < H.size(); ++i) {
          if (H[i].src >= 0) st.disc.high_map[H[i].src] = int(i);
          for (int oi : H[i].outs) st.disc.out[oi] = {Region::high, int(i), {tr.out[oi].place, outsel[oi].first}};
        }
        for (size_t i = 0; i < L.size(); ++i) {
          if (L[i].src >= 0) st.disc.low_map[L[i].src] = int(i);
          for (int oi : L[i].outs) st.disc.out[oi] = {Region::low, int(i), {tr.out[oi].place, outsel[oi].first}};
        }
        for (int oi : center_outs) st.disc.out[oi] = {Region::center, 0, {tr.out[oi].place, outsel[oi].first}};
        result.push_back({std::move(r), std::move(st)});
        return;
      }
      for (const auto& [age, to_center] : out_choices[o]) {
        outsel[o] = {age, to_center};
        AgedToken tok{tr.out[o].place, age};
        if (to_center) {
          C.push_back(tok);
          center_outs.push_back(int(o));
          place_out(o + 1, H, L, C, center_outs);
          center_outs.pop_back();
          C.erase(std::find(C.begin(), C.end(), tok));
          continue;
        }
        for (auto* word : {&H, &L}) {
          // join an existing group
          for (size_t i = 0; i < word->size(); ++i) {
            (*word)[i].g.push_back(tok);
            (*word)[i].outs.push_back(int(o));
            place_out(o + 1, H, L, C, center_outs);
            (*word)[i].outs.pop_back();
            (*word)[i].g.pop_back();
          }
          // a new group in any gap
          for (size_t pos = 0; pos <= word->size(); ++pos) {
            word->insert(word->begin() + pos, Slot{-1, {tok}, {int(o)}});
            place_out(o + 1, H, L, C, center_outs);
            word->erase(word->begin() + pos);
          }
        }
      }
    };
    std::vector<int> center_outs;
    place_out(0, hs, ls, center, center_outs);
  };

  std::function<void(size_t)> choose = [&](size_t i) {
    if (i == arcs.size()) {
      emit_binding();
      return;
    }
    for (size_t j = 0; j < occ.size(); ++j) {
      if (used[j] || occ[j].token.place != arcs[i].place) continue;
      if (!token_matches(occ[j].region, occ[j].token.age, arcs[i].iv)) continue;
      if (j > 0 && !used[j - 1] && occ[j - 1] == occ[j]) continue;  // interchangeable copies
      used[j] = 1;
      pick[i] = int(j);
      choose(i + 1);
      used[j] = 0;
    }
  };
  choose(0);
  return result;
}

std::vector<std::pair<AbstractConfig, AbstractStep>> discrete_successors(const PtpnNet& net, const AbstractConfig& a) {
  std::vector<std::pair<AbstractConfig, AbstractStep>> all;
  for (size_t t = 0; t < net.transitions.size(); ++t) {
    auto s = discrete_successors(net, a, int(t));
    all.insert(all.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  }
  return all;
}

AbstractConfig apply_timed(const AbstractConfig& a, StepKind kind, int k, int cmax) {
  AbstractConfig r;
  r.state = a.state;
  int n = int(a.low.size());
  switch (kind) {
    case StepKind::type1:
      r.high = a.high;
      r.low = a.low;
      if (!a.center.empty()) r.low.insert(r.low.begin(), a.center);
      return r;
    case StepKind::type2:
      if (!a.center.empty() || a.high.empty()) throw Error("type 2 needs an empty center and a high group");
      r.high.assign(a.high.begin(), a.high.end() - 1);
      r.center = aged_plus(a.high.back(), cmax);
      r.low = a.low;
      return r;
    case StepKind::type3:
    case StepKind::type4: {
      bool four = kind == StepKind::type4;
      if (k < 0 || k > (four ? n - 1 : n)) throw Error("type 3/4 parameter out of range");
      for (const auto& g : a.high) r.high.push_back(aged_plus(g, cmax));
      if (!a.center.empty()) r.high.push_back(a.center);
      for (int i = 0; i < k; ++i) r.high.push_back(a.low[i]);
      int from = k;
      if (four) r.center = aged_plus(a.low[from++], cmax);
      for (int i = from; i < n; ++i) r.low.push_back(aged_plus(a.low[i], cmax));
      return r;
    }
    default: throw Error("not a timed step");
  }
}

std::vector<std::pair<AbstractConfig, AbstractStep>> timed_successors(const AbstractConfig& a, int kind, int cmax) {
  std::vector<std::pair<AbstractConfig, AbstractStep>> r;
  int n = int(a.low.size());
  switch (kind) {
    case 1: r.push_back({apply_timed(a, StepKind::type1, 0, cmax), {StepKind::type1, 0, {}}}); break;
    case 2:
      if (a.center.empty() && !a.high.empty()) r.push_back({apply_timed(a, StepKind::type2, 0, cmax), {StepKind::type2, 0, {}}});
      break;
    case 3:
      for (int k = 0; k <= n; ++k) r.push_back({apply_timed(a, StepKind::type3, k, cmax), {StepKind::type3, k, {}}});
      break;
    case 4:
      for (int k = 0; k < n; ++k) r.push_back({apply_timed(a, StepKind::type4, k, cmax), {StepKind::type4, k, {}}});
      break;
    default: throw Error("timed step kind must be 1..4");
  }
  return r;
}

long storage_rate(const PtpnNet& net, const AbstractConfig& a) {
  long z = 0;
  for (const auto& t : a.center) z += net.place_cost[t.place];
  for (const auto* word : {&a.high, &a.low})
    for (const auto& g : *word)
      for (const auto& t : g) z += net.place_cost[t.place];
  return z;
}

long abstract_step_cost(const PtpnNet& net, const AbstractConfig& a, const AbstractStep& step) {
  switch (step.kind) {
    case StepKind::discrete: {
      const auto& tr = net.transitions.at(step.disc.transition);
      if (tr.from != a.state) throw Error("step not applicable");
      return tr.cost;
    }
    case StepKind::type1: return 0;
    case StepKind::type2:
      if (!a.center.empty() || a.high.empty()) throw Error("step not applicable");
      return 0;
    case StepKind::type3:
    case StepKind::type4:
      apply_timed(a, step.kind, step.k, net.cmax());
      return storage_rate(net, a);
  }
  return 0;
}

namespace {

// Fractional parts of the decomposition groups of a concrete marking.
struct Fracs {
  std::vector<Rational> high, low;
};

Fracs fracs_of(const Marking& m) {
  Decomposition d = decompose(m);
  Fracs f;
  for (const auto& g : d.high) f.high.push_back(frac_of(g.front().age));
  for (const auto& g : d.low) f.low.push_back(frac_of(g.front().age));
  return f;
}

// Fill fractional parts for a result word: known[i] set for groups inherited from the source,
// new groups spread evenly between their known neighbours inside (lo, hi).
std::vector<Rational> spread(const std::vector<std::optional<Rational>>& known, const Rational& lo, const Rational& hi) {
  std::vector<Rational> r(known.size());
  size_t i = 0;
  Rational left = lo;
  while (i < known.size()) {
    if (known[i]) {
      r[i] = *known[i];
      left = r[i];
      ++i;
      continue;
    }
    size_t j = i;
    while (j < known.size() && !known[j]) ++j;
    Rational right = j < known.size() ? *known[j] : hi;
    size_t cnt = j - i;
    for (size_t q = 0; q < cnt; ++q) {
      r[i + q] = left + (right - left) * Rational(long(q + 1), long(cnt + 1));
      r[i + q].canonicalize();
    }
    i = j;
  }
  return r;
}

}  // namespace

Realization realize(const PtpnNet& net, const AbstractTrace& at, const Rational& delta) {
  if (delta <= 0 || delta > Rational(1, 5)) throw Error("delta must lie in (0, 1/5]");
  if (at.configs.size() != at.steps.size() + 1) throw Error("abstract trace invalid: config/step count mismatch");
  const AbstractConfig& a0 = at.configs.front();
  if (!a0.high.empty() || !a0.low.empty()) throw Error("abstract trace must start from an all-integer configuration");
  int cmax = net.cmax();
  Realization out;
  ConcreteConfig c;
  c.state = a0.state;
  for (const auto& t : a0.center) c.marking.push_back({t.place, Rational(t.age)});
  normalize(c.marking);
  out.trace.init = c;
  out.configs.push_back(c);
  size_t n = at.steps.size();
  for (size_t i = 0; i < n; ++i) {
    Rational di = delta;
    for (size_t q = i; q < n; ++q) di /= 2;  // delta_i = delta * 2^(i-n)
    const AbstractStep& s = at.steps[i];
    const AbstractConfig& src = at.configs[i];
    Decomposition d = decompose(c.marking);
    Fracs fr = fracs_of(c.marking);
    ConcreteStep cs;
    if (s.kind == StepKind::discrete) {
      const auto& tr = net.transitions.at(s.disc.transition);
      Marking avail = c.marking;
      auto take = [&](const TokenRef& r) {
        const Marking* part = r.region == Region::center ? &d.center
                              : r.region == Region::high ? &d.high.at(r.group)
                                                         : &d.low.at(r.group);
        for (const auto& tok : *part) {
          if (tok.place != r.token.place) continue;
          if (std::min<long>(floor_of(tok.age), cmax + 1) != r.token.age) continue;
          auto it = std::find(avail.begin(), avail.end(), tok);
          if (it == avail.end()) continue;
          avail.erase(it);
          return tok;
        }
        throw Error("abstract trace invalid: witness token missing");
      };
      DiscreteStep ds;
      ds.transition = s.disc.transition;
      for (const auto& r : s.disc.in) ds.in.push_back(take(r));
      for (const auto& r : s.disc.read) ds.read.push_back(take(r));
      const AbstractConfig& dst = at.configs[i + 1];
      std::vector<std::optional<Rational>> kh(dst.high.size()), kl(dst.low.size());
      for (size_t g = 0; g < s.disc.high_map.size(); ++g)
        if (s.disc.high_map[g] >= 0) kh.at(s.disc.high_map[g]) = fr.high.at(g);
      for (size_t g = 0; g < s.disc.low_map.size(); ++g)
        if (s.disc.low_map[g] >= 0) kl.at(s.disc.low_map[g]) = fr.low.at(g);
      auto fh = spread(kh, 1 - di, Rational(1));
      auto fl = spread(kl, Rational(0), di);
      for (size_t o = 0; o < s.disc.out.size(); ++o) {
        const TokenRef& r = s.disc.out[o];
        Rational age(r.token.age);
        if (r.region == Region::high) age += fh.at(r.group);
        if (r.region == Region::low) age += fl.at(r.group);
        ds.out.push_back({tr.out.at(o).place, age});
      }
      normalize(ds.in);
      normalize(ds.read);
      normalize(ds.out);
      cs = ds;
    } else {
      Rational x;
      Rational top_gap = fr.high.empty() ? Rational(1) : 1 - fr.high.back();
      auto low_eps = [&](int idx) -> Rational {  // epsilon of b_idx, idx >= 1; beyond the last group use delta_i
        return idx <= int(fr.low.size()) ? fr.low[idx - 1] : di;
      };
      switch (s.kind) {
        case StepKind::type1: x = std::min(di, top_gap) / 2; break;
        case StepKind::type2:
          if (fr.high.empty()) throw Error("abstract trace invalid: type 2 without high group");
          x = top_gap;
          break;
        case StepKind::type3: {
          Rational lo = 1 - low_eps(s.k + 1);
          Rational hi = s.k == 0 ? Rational(1) : 1 - fr.low.at(s.k - 1);
          x = (lo + hi) / 2;
          break;
        }
        case StepKind::type4: x = 1 - fr.low.at(s.k); break;
        default: break;
      }
      x.canonicalize();
      cs = TimedStep{x};
    }
    ConcreteConfig next = fire(net, c, cs);
    if (encode(net, next) != at.configs[i + 1])
      throw Error("abstract trace invalid at step " + std::to_string(i + 1) + " (" + to_string(s, net) + ")");
    (void)src;
    out.trace.steps.push_back(cs);
    out.configs.push_back(next);
    c = next;
  }
  return out;
}

}  // namespace ptpn
