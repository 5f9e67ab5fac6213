#include "ptpn/core.hpp"

#include <cctype>
#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ptpn {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational");
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), part = text.substr(dot + 1);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw Error("malformed decimal '" + text + "'");
    mpz_class den = 1;
    for (size_t i = 0; i < part.size(); ++i) den *= 10;
    mpz_class num(whole.empty() ? std::string("0") : whole, 10);
    bool neg = !whole.empty() && whole[0] == '-';
    mpz_class frac_part(part, 10);
    Rational q(num * den + (neg ? -frac_part : frac_part), den);
    q.canonicalize();
    return q;
  }
  for (char ch : text)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-'))
      throw Error("malformed rational '" + text + "'");
  Rational q;
  try {
    q = Rational(text, 10);
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational '" + text + "'");
  }
  if (q.get_den() == 0) throw Error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long floor_of(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

Rational frac_of(const Rational& q) {
  Rational r = q - Rational(floor_of(q));
  r.canonicalize();
  return r;
}

Interval Interval::make(long lo, bool lo_closed, long hi, bool hi_closed) {
  if (lo < 0 || hi < lo) throw Error("empty interval");
  if (lo == hi && !(lo_closed && hi_closed)) throw Error("empty interval");
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.lo_closed = lo_closed;
  iv.hi_closed = hi_closed;
  return iv;
}

Interval Interval::from(long lo, bool lo_closed) {
  if (lo < 0) throw Error("negative interval bound");
  Interval iv;
  iv.lo = lo;
  iv.hi = 0;
  iv.hi_inf = true;
  iv.lo_closed = lo_closed;
  iv.hi_closed = false;
  return iv;
}

bool Interval::contains(const Rational& a) const {
  bool above = lo_closed ? a >= lo : a > lo;
  bool below = hi_inf || (hi_closed ? a <= hi : a < hi);
  return above && below;
}

bool Interval::contains(long a) const { return contains(Rational(a)); }

bool Interval::models(long k) const { return lo <= k && (hi_inf || k < hi); }

std::string to_string(const Interval& iv) {
  std::string s = iv.lo_closed ? "[" : "(";
  s += std::to_string(iv.lo) + ",";
  s += iv.hi_inf ? std::string("inf") : std::to_string(iv.hi);
  s += iv.hi_closed ? "]" : ")";
  return s;
}

int PtpnNet::state_index(const std::string& name) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  throw Error("unknown state '" + name + "'");
}

int PtpnNet::place_index(const std::string& name) const {
  for (size_t i = 0; i < places.size(); ++i)
    if (places[i] == name) return static_cast<int>(i);
  throw Error("unknown place '" + name + "'");
}

int PtpnNet::transition_index(const std::string& name) const {
  for (size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].name == name) return static_cast<int>(i);
  throw Error("unknown transition '" + name + "'");
}

int PtpnNet::cmax() const {
  long c = 0;
  for (const auto& t : transitions)
    for (const auto* arcs : {&t.in, &t.read, &t.out})
      for (const auto& a : *arcs) c = std::max(c, a.iv.max_finite());
  return static_cast<int>(c);
}

long PtpnNet::max_place_cost() const {
  long c = 0;
  for (long x : place_cost) c = std::max(c, x);
  return c;
}

void PtpnNet::validate() const {
  if (place_cost.size() != places.size()) throw Error("place cost table size mismatch");
  for (long c : place_cost)
    if (c < 0) throw Error("negative place cost");
  int ns = static_cast<int>(states.size()), np = static_cast<int>(places.size());
  for (const auto& t : transitions) {
    if (t.from < 0 || t.from >= ns || t.to < 0 || t.to >= ns) throw Error("transition " + t.name + ": bad state");
    if (t.cost < 0) throw Error("negative transition cost");
    for (const auto* arcs : {&t.in, &t.read, &t.out})
      for (const auto& a : *arcs)
        if (a.place < 0 || a.place >= np) throw Error("transition " + t.name + ": bad place");
  }
}

void normalize(Marking& m) { std::sort(m.begin(), m.end()); }

bool includes(const Marking& big, const Marking& small) {
  Marking a = big, b = small;
  normalize(a);
  normalize(b);
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

Marking minus(const Marking& big, const Marking& small) {
  Marking a = big, b = small, r;
  normalize(a);
  normalize(b);
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Marking plus(const Marking& a, const Marking& b) {
  Marking r = a;
  r.insert(r.end(), b.begin(), b.end());
  normalize(r);
  return r;
}

namespace {

// Kuhn's augmenting paths; left side = arcs, right side = tokens.
bool augment(int arc, const std::vector<std::vector<int>>& adj, std::vector<int>& owner, std::vector<char>& seen) {
  for (int tok : adj[arc]) {
    if (seen[tok]) continue;
    seen[tok] = 1;
    if (owner[tok] < 0 || augment(owner[tok], adj, owner, seen)) {
      owner[tok] = arc;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<int>> assign(const Marking& tokens, const std::vector<Arc>& arcs) {
  std::vector<std::vector<int>> adj(arcs.size());
  for (size_t a = 0; a < arcs.size(); ++a)
    for (size_t t = 0; t < tokens.size(); ++t)
      if (tokens[t].place == arcs[a].place && arcs[a].iv.contains(tokens[t].age)) adj[a].push_back(static_cast<int>(t));
  std::vector<int> owner(tokens.size(), -1);
  for (size_t a = 0; a < arcs.size(); ++a) {
    std::vector<char> seen(tokens.size(), 0);
    if (!augment(static_cast<int>(a), adj, owner, seen)) return std::nullopt;
  }
  return owner;
}

}  // namespace

std::optional<std::vector<int>> match(const Marking& tokens, const std::vector<Arc>& arcs) {
  if (tokens.size() != arcs.size()) return std::nullopt;
  return assign(tokens, arcs);
}

bool enabled(const PtpnNet& net, const ConcreteConfig& c, int t) {
  if (t < 0 || t >= static_cast<int>(net.transitions.size())) throw Error("unknown transition id");
  const auto& tr = net.transitions[t];
  if (tr.from != c.state) return false;
  std::vector<Arc> arcs = tr.in;
  arcs.insert(arcs.end(), tr.read.begin(), tr.read.end());
  return assign(c.marking, arcs).has_value();
}

Marking delayed(const Marking& m, const Rational& x) {
  Marking r = m;
  for (auto& tok : r) tok.age += x;
  return r;
}

ConcreteConfig fire(const PtpnNet& net, const ConcreteConfig& c, const ConcreteStep& step) {
  if (const auto* ts = std::get_if<TimedStep>(&step)) {
    if (ts->delay <= 0) throw Error("delay must be positive");
    return {c.state, delayed(c.marking, ts->delay)};
  }
  const auto& ds = std::get<DiscreteStep>(step);
  if (ds.transition < 0 || ds.transition >= static_cast<int>(net.transitions.size()))
    throw Error("unknown transition id");
  const auto& tr = net.transitions[ds.transition];
  if (tr.from != c.state) throw Error("transition " + tr.name + " not enabled in this control-state");
  if (!includes(c.marking, plus(ds.in, ds.read))) throw Error("binding tokens not in marking");
  if (!match(ds.in, tr.in) || !match(ds.read, tr.read) || !match(ds.out, tr.out))
    throw Error("binding does not match arcs of " + tr.name);
  for (const auto& tok : ds.out)
    if (tok.age < 0) throw Error("negative output age");
  return {tr.to, plus(minus(c.marking, ds.in), ds.out)};
}

Rational step_cost(const PtpnNet& net, const ConcreteConfig& c, const ConcreteStep& step) {
  fire(net, c, step);
  if (const auto* ts = std::get_if<TimedStep>(&step)) {
    Rational rate = 0;
    for (const auto& tok : c.marking) rate += net.place_cost[tok.place];
    Rational r = rate * ts->delay;
    r.canonicalize();
    return r;
  }
  return Rational(net.transitions[std::get<DiscreteStep>(step).transition].cost);
}

std::vector<ConcreteConfig> replay(const PtpnNet& net, const Trace& trace) {
  std::vector<ConcreteConfig> out{trace.init};
  normalize(out.back().marking);
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    try {
      out.push_back(fire(net, out.back(), trace.steps[i]));
    } catch (const Error& e) {
      throw Error("step " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

Rational trace_cost(const PtpnNet& net, const Trace& trace) {
  auto configs = replay(net, trace);
  Rational total = 0;
  for (size_t i = 0; i < trace.steps.size(); ++i) total += step_cost(net, configs[i], trace.steps[i]);
  total.canonicalize();
  return total;
}

Decomposition decompose(const Marking& m) {
  std::map<Rational, Marking> by_frac;
  for (const auto& tok : m) by_frac[frac_of(tok.age)].push_back(tok);
  Decomposition d;
  Rational half(1, 2);
  for (auto& [f, part] : by_frac) {
    normalize(part);
    if (f == 0)
      d.center = part;
    else if (f < half)
      d.low.push_back(part);
    else
      d.high.push_back(part);
  }
  return d;
}

namespace {

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta > Rational(1, 5)) throw Error("delta must lie in (0, 1/5]");
}

bool within(const Marking& m, const Rational& delta) {
  for (const auto& tok : m) {
    Rational f = frac_of(tok.age);
    if (!(f < delta || f > 1 - delta)) return false;
  }
  return true;
}

}  // namespace

bool is_delta_form(const Marking& m, const Rational& delta) {
  check_delta(delta);
  return within(m, delta);
}

bool is_delta_form(const PtpnNet& net, const Trace& trace, const Rational& delta) {
  check_delta(delta);
  auto configs = replay(net, trace);
  for (const auto& c : configs)
    if (!within(c.marking, delta)) return false;
  for (const auto& s : trace.steps)
    if (const auto* ts = std::get_if<TimedStep>(&s))
      if (!(ts->delay < delta || ts->delay > 1 - delta) || ts->delay >= 1) return false;
  return true;
}

bool is_detailed(const ConcreteConfig& c, const Rational& x) {
  if (x <= 0) return false;
  Decomposition d = decompose(c.marking);
  Rational eps = d.high.empty() ? Rational(1, 2) : frac_of(d.high.back().front().age);
  Rational gap = 1 - eps;
  return x < gap || (d.center.empty() && x == gap);
}

Trace refine_to_detailed(const PtpnNet& net, const Trace& trace) {
  Trace out{trace.init, {}};
  ConcreteConfig c = trace.init;
  normalize(c.marking);
  for (const auto& s : trace.steps) {
    if (std::holds_alternative<DiscreteStep>(s)) {
      c = fire(net, c, s);
      out.steps.push_back(s);
      continue;
    }
    Rational rest = std::get<TimedStep>(s).delay;
    if (rest <= 0) throw Error("delay must be positive");
    while (rest > 0) {
      Decomposition d = decompose(c.marking);
      Rational eps = d.high.empty() ? Rational(1, 2) : frac_of(d.high.back().front().age);
      Rational gap = 1 - eps, x;
      if (rest < gap)
        x = rest;
      else if (d.center.empty())
        x = gap;
      else
        x = gap / 2;
      x.canonicalize();
      out.steps.push_back(TimedStep{x});
      c.marking = delayed(c.marking, x);
      rest -= x;
    }
  }
  return out;
}

std::vector<DiscreteStep> enumerate_firings(const PtpnNet& net, const ConcreteConfig& c, int t,
                                            const std::vector<Rational>& palette) {
  if (t < 0 || t >= static_cast<int>(net.transitions.size())) throw Error("unknown transition id");
  const auto& tr = net.transitions[t];
  std::vector<DiscreteStep> result;
  if (tr.from != c.state) return result;
  Marking m = c.marking;
  normalize(m);
  std::vector<Arc> arcs = tr.in;
  arcs.insert(arcs.end(), tr.read.begin(), tr.read.end());

  std::set<std::pair<Marking, Marking>> bindings;
  std::vector<char> used(m.size(), 0);
  std::vector<int> pick(arcs.size(), -1);
  std::function<void(size_t)> choose = [&](size_t a) {
    if (a == arcs.size()) {
      Marking in, read;
      for (size_t i = 0; i < arcs.size(); ++i) (i < tr.in.size() ? in : read).push_back(m[pick[i]]);
      normalize(in);
      normalize(read);
      bindings.insert({in, read});
      return;
    }
    for (size_t i = 0; i < m.size(); ++i) {
      if (used[i] || m[i].place != arcs[a].place || !arcs[a].iv.contains(m[i].age)) continue;
      // identical tokens are interchangeable: take the first unused copy only
      if (i > 0 && m[i] == m[i - 1] && !used[i - 1]) continue;
      used[i] = 1;
      pick[a] = static_cast<int>(i);
      choose(a + 1);
      used[i] = 0;
    }
  };
  choose(0);

  long top = net.cmax() + 1;
  std::vector<std::vector<Rational>> ages(tr.out.size());
  for (size_t o = 0; o < tr.out.size(); ++o) {
    const auto& iv = tr.out[o].iv;
    for (long k = 0; k <= top; ++k) {
      if (iv.contains(k)) ages[o].push_back(Rational(k));
      for (const auto& f : palette) {
        Rational a = Rational(k) + f;
        if (f > 0 && f < 1 && iv.contains(a)) ages[o].push_back(a);
      }
    }
  }
  std::set<Marking> outs;
  Marking cur;
  std::function<void(size_t)> gen = [&](size_t o) {
    if (o == tr.out.size()) {
      Marking s = cur;
      normalize(s);
      outs.insert(s);
      return;
    }
    for (const auto& a : ages[o]) {
      cur.push_back({tr.out[o].place, a});
      gen(o + 1);
      cur.pop_back();
    }
  };
  gen(0);
  for (const auto& [in, read] : bindings)
    for (const auto& out : outs) result.push_back({t, in, read, out});
  return result;
}

}  // namespace ptpn
