#pragma once

// Exhaustive comparison of concrete detailed steps with abstract successors.

#include "ptpn/aptpn.hpp"
#include "ptpn/core.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace corr {

using namespace ptpn;

struct Mismatch {
  std::string what;
  bool ok() const { return what.empty(); }
};

inline std::set<Rational> fractions(const Marking& m) {
  std::set<Rational> f;
  for (const auto& t : m) f.insert(frac_of(t.age));
  return f;
}

// Output fractional parts: every existing one plus `per_gap` fresh points in each gap of the delta bands.
inline std::vector<Rational> palette(const Marking& m, const Rational& delta, int per_gap) {
  std::set<Rational> f = fractions(m);
  f.erase(Rational(0));
  std::vector<Rational> lows{Rational(0)}, highs{1 - delta};
  for (const auto& x : f) (x < Rational(1, 2) ? lows : highs).push_back(x);
  lows.push_back(delta);
  highs.push_back(Rational(1));
  std::vector<Rational> out(f.begin(), f.end());
  for (const auto* band : {&lows, &highs})
    for (size_t i = 0; i + 1 < band->size(); ++i)
      for (int k = 1; k <= per_gap; ++k) {
        Rational p = (*band)[i] + ((*band)[i + 1] - (*band)[i]) * Rational(k, per_gap + 1);
        p.canonicalize();
        out.push_back(p);
      }
  return out;
}

inline Mismatch check_discrete(const PtpnNet& net, const ConcreteConfig& c, const Rational& delta) {
  AbstractConfig a = encode(net, c);
  for (size_t t = 0; t < net.transitions.size(); ++t) {
    int per_gap = std::max<int>(1, net.transitions[t].out.size());
    std::set<AbstractConfig> concrete, abstract;
    for (const auto& s : enumerate_firings(net, c, int(t), palette(c.marking, delta, per_gap))) {
      ConcreteConfig next = fire(net, c, s);
      if (!is_delta_form(next.marking, delta)) continue;
      concrete.insert(encode(net, next));
    }
    for (const auto& [b, st] : discrete_successors(net, a, int(t))) abstract.insert(b);
    if (concrete != abstract)
      return {"discrete " + net.transitions[t].name + " at " + to_string(a, net) + ": concrete " +
              std::to_string(concrete.size()) + " vs abstract " + std::to_string(abstract.size())};
  }
  return {};
}

inline std::vector<Rational> delay_candidates(const Marking& m, const Rational& delta) {
  std::set<Rational> breaks{Rational(0), Rational(1), delta, 1 - delta};
  for (const auto& f : fractions(m))
    if (f != 0) breaks.insert(1 - f);
  std::vector<Rational> b(breaks.begin(), breaks.end()), out;
  for (size_t i = 0; i < b.size(); ++i) {
    if (b[i] > 0 && b[i] < 1) out.push_back(b[i]);
    if (i + 1 < b.size()) {
      Rational mid = (b[i] + b[i + 1]) / 2;
      mid.canonicalize();
      out.push_back(mid);
    }
  }
  std::vector<Rational> keep;
  for (const auto& x : out)
    if ((x > 0 && x < delta) || (x > 1 - delta && x < 1)) keep.push_back(x);
  return keep;
}

inline Mismatch check_timed(const PtpnNet& net, const ConcreteConfig& c, const Rational& delta) {
  AbstractConfig a = encode(net, c);
  int cmax = net.cmax();
  std::set<AbstractConfig> short_c, long_c, short_a, long_a;
  for (const auto& x : delay_candidates(c.marking, delta)) {
    ConcreteConfig next = fire(net, c, TimedStep{x});
    if (x < delta) {
      if (is_detailed(c, x)) short_c.insert(encode(net, next));
    } else {
      long_c.insert(encode(net, next));
    }
  }
  for (int kind : {1, 2})
    for (const auto& [b, st] : timed_successors(a, kind, cmax)) short_a.insert(b);
  for (int kind : {3, 4})
    for (const auto& [b, st] : timed_successors(a, kind, cmax)) long_a.insert(b);
  if (short_c != short_a) return {"short delays at " + to_string(a, net)};
  if (long_c != long_a) return {"long delays at " + to_string(a, net)};
  return {};
}

inline Interval random_interval(std::mt19937& rng, int maxb) {
  int lo = rng() % (maxb + 1);
  if (rng() % 3 == 0) return Interval::from(lo, rng() % 2);
  int hi = lo + rng() % (maxb + 1 - lo + 1);
  if (hi == lo) return Interval::make(lo, true, hi, true);
  return Interval::make(lo, rng() % 2, hi, rng() % 2);
}

inline PtpnNet random_net(std::mt19937& rng, int places, int transitions, int states = 2) {
  PtpnNet n;
  for (int q = 0; q < states; ++q) n.states.push_back("q" + std::to_string(q + 1));
  for (int p = 0; p < places; ++p) {
    n.places.push_back("p" + std::to_string(p + 1));
    n.place_cost.push_back(rng() % 3);
  }
  for (int t = 0; t < transitions; ++t) {
    Transition tr;
    tr.name = "t" + std::to_string(t + 1);
    tr.from = rng() % states;
    tr.to = rng() % states;
    tr.cost = rng() % 3;
    int ni = rng() % 3, nr = rng() % 2, no = rng() % 3;
    for (int i = 0; i < ni; ++i) tr.in.push_back({int(rng() % places), random_interval(rng, 2)});
    for (int i = 0; i < nr; ++i) tr.read.push_back({int(rng() % places), random_interval(rng, 2)});
    for (int i = 0; i < no; ++i) tr.out.push_back({int(rng() % places), random_interval(rng, 2)});
    n.transitions.push_back(tr);
  }
  return n;
}

// delta-form configuration (delta = 1/8) with at most `max_tokens` tokens
inline ConcreteConfig random_config(std::mt19937& rng, const PtpnNet& net, int max_tokens) {
  static const Rational fr[] = {Rational(0), Rational(1, 32), Rational(1, 16), Rational(3, 32),
                                Rational(29, 32), Rational(15, 16), Rational(31, 32)};
  ConcreteConfig c;
  c.state = rng() % net.states.size();
  int n = rng() % (max_tokens + 1);
  for (int i = 0; i < n; ++i)
    c.marking.push_back({int(rng() % net.places.size()), Rational(long(rng() % (net.cmax() + 3))) + fr[rng() % 7]});
  normalize(c.marking);
  return c;
}

}  // namespace corr
