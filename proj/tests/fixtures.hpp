#pragma once

#include "ptpn/aptpn.hpp"
#include "ptpn/core.hpp"

#include <initializer_list>
#include <string>
#include <utility>

namespace fixtures {

using namespace ptpn;

inline Rational q(const char* s) { return parse_rational(s); }

inline PtpnNet running_net() {
  PtpnNet n;
  n.states = {"q1", "q2"};
  n.places = {"p1", "p2", "p3"};
  n.place_cost = {3, 2, 0};
  Transition t1{"t1", 0, 1, {{0, Interval::make(0, false, 3, true)}}, {},
                {{1, Interval::make(1, true, 5, false)}, {2, Interval::from(2, false)}}, 1};
  Transition t2{"t2", 1, 0, {{2, Interval::make(1, true, 4, false)}}, {{1, Interval::make(2, true, 2, true)}},
                {{0, Interval::from(0, true)}}, 3};
  n.transitions = {t1, t2};
  return n;
}

inline Marking tokens(std::initializer_list<std::pair<int, const char*>> list) {
  Marking m;
  for (const auto& [p, a] : list) m.push_back({p, q(a)});
  normalize(m);
  return m;
}

// the example computation of the running net
inline Trace running_trace() {
  Trace tr;
  tr.init = {0, tokens({{0, "3.1"}, {0, "3.1"}, {0, "2.5"}, {1, "6.5"}, {2, "0.1"}, {2, "0.1"}})};
  tr.steps.push_back(DiscreteStep{0, tokens({{0, "2.5"}}), {}, tokens({{1, "1.3"}, {2, "2.2"}})});
  tr.steps.push_back(TimedStep{q("0.7")});
  tr.steps.push_back(DiscreteStep{1, tokens({{2, "2.9"}}), tokens({{1, "2.0"}}), tokens({{0, "9.2"}})});
  tr.steps.push_back(TimedStep{q("1.3")});
  return tr;
}

// the delta-form configuration of the abstraction example (delta = 0.2)
inline ConcreteConfig abstraction_config() {
  return {0, tokens({{0, "2.1"}, {0, "1.0"}, {0, "2.85"}, {0, "3.9"}, {1, "1.1"}, {1, "9.1"}, {1, "1.0"},
                     {1, "9.85"}, {2, "8.1"}, {2, "0.85"}, {2, "2.9"}, {2, "4.9"}, {2, "9.0"}})};
}

inline Group group(std::initializer_list<std::pair<int, int>> list) {
  Group g;
  for (const auto& [p, a] : list) g.push_back({p, a});
  normalize(g);
  return g;
}

inline AbstractConfig c1() {
  AbstractConfig a;
  a.state = 0;
  a.high = {group({{0, 2}, {1, 6}, {2, 0}}), group({{0, 3}, {2, 2}, {2, 4}})};
  a.center = group({{0, 1}, {1, 1}, {2, 6}});
  a.low = {group({{0, 2}, {1, 1}, {1, 6}, {2, 6}})};
  return a;
}

inline AbstractConfig c2() {
  AbstractConfig a = c1();
  a.low.insert(a.low.begin(), a.center);
  a.center.clear();
  return a;
}

inline AbstractConfig c3() {
  AbstractConfig a;
  a.high = {group({{0, 2}, {1, 6}, {2, 0}})};
  a.center = group({{0, 4}, {2, 3}, {2, 5}});
  a.low = c2().low;
  return a;
}

inline AbstractConfig c4() {
  AbstractConfig a;
  a.high = {group({{0, 3}, {1, 6}, {2, 1}}), group({{0, 4}, {2, 3}, {2, 5}}), group({{0, 1}, {1, 1}, {2, 6}})};
  a.low = {group({{0, 3}, {1, 2}, {1, 6}, {2, 6}})};
  return a;
}

inline AbstractConfig c5() {
  AbstractConfig a;
  a.high = {group({{0, 3}, {1, 6}, {2, 1}}), group({{0, 4}, {2, 3}, {2, 5}})};
  a.center = group({{0, 2}, {1, 2}, {2, 6}});
  a.low = {group({{0, 3}, {1, 2}, {1, 6}, {2, 6}})};
  return a;
}

}  // namespace fixtures
