#include <doctest.h>

#include <random>
#include <set>

#include "correspondence.hpp"
#include "fixtures.hpp"

using namespace ptpn;
using namespace fixtures;

namespace {

bool contains(const std::vector<std::pair<AbstractConfig, AbstractStep>>& v, const AbstractConfig& a) {
  for (const auto& [b, s] : v)
    if (b == a) return true;
  return false;
}

}  // namespace

TEST_CASE("encoding of the delta-form example configuration") {
  PtpnNet net = running_net();
  CHECK(net.cmax() == 5);
  CHECK(encode(net, abstraction_config()) == c1());
  ConcreteConfig ints{1, tokens({{0, "3"}, {2, "17"}})};
  AbstractConfig a = encode(net, ints);
  CHECK(a.high.empty());
  CHECK(a.low.empty());
  CHECK(a.center == group({{0, 3}, {2, 6}}));
  CHECK_THROWS_AS(encode(net, {0, tokens({{0, "1/2"}})}), Error);
}

TEST_CASE("abstract timed transitions of the example") {
  int cmax = 5;
  CHECK(apply_timed(c1(), StepKind::type1, 0, cmax) == c2());
  CHECK(apply_timed(c2(), StepKind::type2, 0, cmax) == c3());
  CHECK(apply_timed(c3(), StepKind::type3, 1, cmax) == c4());
  CHECK(apply_timed(c3(), StepKind::type4, 0, cmax) == c5());
  CHECK(contains(timed_successors(c1(), 1, cmax), c2()));
  CHECK(contains(timed_successors(c2(), 2, cmax), c3()));
  CHECK(contains(timed_successors(c3(), 3, cmax), c4()));
  CHECK(contains(timed_successors(c3(), 4, cmax), c5()));
  CHECK(timed_successors(c3(), 3, cmax).size() == 3);
  CHECK(timed_successors(c3(), 4, cmax).size() == 2);
  CHECK(timed_successors(c1(), 2, cmax).empty());  // center not empty
  // type 1 with an empty center is the identity
  CHECK(apply_timed(c2(), StepKind::type1, 0, cmax) == c2());
}

TEST_CASE("the paper's concrete delays match the abstract steps") {
  PtpnNet net = running_net();
  ConcreteConfig c = abstraction_config();
  ConcreteConfig d1 = fire(net, c, TimedStep{q("0.01")});
  ConcreteConfig d2 = fire(net, d1, TimedStep{q("0.09")});
  CHECK(encode(net, d1) == c2());
  CHECK(encode(net, d2) == c3());
  CHECK(encode(net, fire(net, d2, TimedStep{q("0.85")})) == c4());
  CHECK(encode(net, fire(net, d2, TimedStep{q("0.9")})) == c5());
  CHECK(is_detailed(c, q("0.01")));
  CHECK(is_detailed(d1, q("0.09")));
}

TEST_CASE("b+ saturates at cmax+1") {
  Group g = group({{0, 6}, {1, 5}, {2, 0}});
  CHECK(aged_plus(g, 5) == group({{0, 6}, {1, 6}, {2, 1}}));
  CHECK(aged_plus(group({{0, 6}}), 5) == group({{0, 6}}));
}

TEST_CASE("abstract step costs") {
  PtpnNet net = running_net();
  CHECK(abstract_step_cost(net, c3(), {StepKind::type3, 1, {}}) == 20);
  CHECK(storage_rate(net, c3()) == 20);
  CHECK(c3().token_count() == 13);
  CHECK(abstract_step_cost(net, c1(), {StepKind::type1, 0, {}}) == 0);
  AbstractConfig at_q2 = c1();
  at_q2.state = 1;
  AbstractStep t2;
  t2.kind = StepKind::discrete;
  t2.disc.transition = 1;
  CHECK(abstract_step_cost(net, at_q2, t2) == 3);
}

TEST_CASE("discrete successors: trivial and counted cases") {
  PtpnNet net;
  net.states = {"a", "b"};
  net.places = {"p"};
  net.place_cost = {0};
  net.transitions.push_back({"e", 0, 1, {}, {}, {}, 0});
  AbstractConfig a;
  a.low = {group({{0, 0}}), group({{0, 1}})};
  auto succ = discrete_successors(net, a, 0);
  REQUIRE(succ.size() == 1);
  AbstractConfig expect = a;
  expect.state = 1;
  CHECK(succ[0].first == expect);

  // one fresh token with interval (0,1): only k = 0 off the integer grid.
  // n low groups, no high groups: join one of n, new low group in n+1 gaps, one new high group.
  net.transitions[0].out.push_back({0, Interval::make(0, false, 1, false)});
  for (int n = 0; n <= 3; ++n) {
    AbstractConfig b;
    for (int i = 0; i < n; ++i) b.low.push_back(group({{0, 2 + i}}));
    CHECK(discrete_successors(net, b, 0).size() == size_t(2 * n + 2));
  }
}

TEST_CASE("discrete successors on the running net agree with concrete firing") {
  PtpnNet net = running_net();
  auto m = corr::check_discrete(net, abstraction_config(), q("1/5"));
  CHECK_MESSAGE(m.ok(), m.what);
  auto t = corr::check_timed(net, abstraction_config(), q("1/5"));
  CHECK_MESSAGE(t.ok(), t.what);
}

TEST_CASE("correspondence on random small nets") {
  std::mt19937 rng(11);
  Rational delta(1, 8);
  for (int it = 0; it < 40; ++it) {
    PtpnNet net = corr::random_net(rng, 1 + rng() % 3, 1 + rng() % 2);
    for (int k = 0; k < 4; ++k) {
      ConcreteConfig c = corr::random_config(rng, net, 4);
      auto d = corr::check_discrete(net, c, delta);
      CHECK_MESSAGE(d.ok(), d.what);
      auto t = corr::check_timed(net, c, delta);
      CHECK_MESSAGE(t.ok(), t.what);
    }
  }
}

namespace {

// random abstract walk from an integer configuration
AbstractTrace random_walk(std::mt19937& rng, const PtpnNet& net, const AbstractConfig& start, int len) {
  AbstractTrace at{{start}, {}};
  int cmax = net.cmax();
  for (int i = 0; i < len; ++i) {
    std::vector<std::pair<AbstractConfig, AbstractStep>> all = discrete_successors(net, at.configs.back());
    for (int kind = 1; kind <= 4; ++kind) {
      auto s = timed_successors(at.configs.back(), kind, cmax);
      all.insert(all.end(), s.begin(), s.end());
    }
    if (all.empty()) break;
    auto& pick = all[rng() % all.size()];
    at.configs.push_back(pick.first);
    at.steps.push_back(pick.second);
  }
  return at;
}

}  // namespace

TEST_CASE("realize: stepwise encoding and the cost bound") {
  std::mt19937 rng(5);
  Rational delta(1, 5);
  for (int it = 0; it < 60; ++it) {
    PtpnNet net = corr::random_net(rng, 1 + rng() % 3, 1 + rng() % 2);
    AbstractConfig start;
    start.state = rng() % 2;
    for (int i = 0; i < int(rng() % 3); ++i) start.center.push_back({int(rng() % net.places.size()), int(rng() % 3)});
    normalize(start.center);
    AbstractTrace at = random_walk(rng, net, start, 1 + rng() % 8);
    Realization r = realize(net, at, delta);
    REQUIRE(r.configs.size() == at.configs.size());
    long abstract_cost = 0;
    size_t max_tokens = 0;
    for (size_t i = 0; i < at.steps.size(); ++i) {
      CHECK(encode(net, r.configs[i + 1]) == at.configs[i + 1]);
      abstract_cost += abstract_step_cost(net, at.configs[i], at.steps[i]);
      max_tokens = std::max(max_tokens, at.configs[i].token_count());
    }
    max_tokens = std::max(max_tokens, at.configs.back().token_count());
    Rational diff = trace_cost(net, r.trace) - abstract_cost;
    if (diff < 0) diff = -diff;
    Rational bound = Rational(long(at.steps.size())) * delta * long(max_tokens) * net.max_place_cost();
    CHECK(diff <= bound);
    CHECK(is_delta_form(net, r.trace, delta));
  }
  PtpnNet net = running_net();
  AbstractTrace empty{{AbstractConfig{}}, {}};
  CHECK(realize(net, empty, delta).trace.steps.empty());
}
