#include <doctest.h>

#include <deque>
#include <random>
#include <set>

#include "instances.hpp"
#include "ptpn/core.hpp"
#include "ptpn/sdtn.hpp"

using namespace ptpn;
using namespace instances;

namespace {

Counts counts(std::initializer_list<int> xs) { return Counts(xs); }

Verdict reach(const SdtnInstance& in, int bound = 40) {
  return reach_bounded(in.net, {in.init}, Target::config(in.final), {1000000, bound, 1}).verdict;
}
Verdict reach(const InhibitorInstance& in, int bound = 40) {
  return reach_bounded(in.net, {in.init}, Target::config(in.final), {1000000, bound, 1}).verdict;
}

SdtnNet transfer_example() {
  SdtnNet n;
  n.states = {"a", "b"};
  n.places = {"s", "t", "u"};
  n.st = {{0, 1}};
  n.transitions = {{"go", 0, 1, counts({0, 0, 1}), counts({0, 0, 0}), true},
                   {"add", 0, 0, counts({0, 0, 0}), counts({1, 0, 0}), false}};
  return n;
}

}  // namespace

TEST_CASE("transfer firing moves every source token") {
  auto n = transfer_example();
  n.validate();
  NetConfig c{0, counts({3, 1, 1})};
  auto d = fire_sdtn(n, c, 0);
  CHECK(d == NetConfig{1, counts({0, 4, 0})});
  auto e = fire_sdtn(n, c, 1);
  CHECK(e == NetConfig{0, counts({4, 1, 1})});
  CHECK_THROWS_AS(fire_sdtn(n, d, 0), Error);
}

TEST_CASE("disjointness is enforced") {
  auto n = transfer_example();
  n.transitions[0].in = counts({1, 0, 0});
  CHECK_THROWS_AS(n.validate(), Error);
  n = transfer_example();
  n.st.push_back({2, 1});
  CHECK_THROWS_AS(n.validate(), Error);
  n = transfer_example();
  n.st = {{0, 0}};
  CHECK_THROWS_AS(n.validate(), Error);
}

TEST_CASE("inhibitor firing") {
  InhibitorNet n;
  n.states = {"a"};
  n.places = {"x", "y"};
  n.transitions = {{"t", 0, 0, counts({0, 0}), counts({0, 1}), false}};
  n.inhibitor_place = 0;
  n.inhibited_transition = 0;
  CHECK(enabled(n, {0, counts({0, 0})}, 0));
  CHECK_FALSE(enabled(n, {0, counts({1, 0})}, 0));
  CHECK(fire_inhibitor(n, {0, counts({0, 2})}, 0).marking == counts({0, 3}));
}

TEST_CASE("reduction to one inhibitor arc: sizes") {
  SdtnInstance in{transfer_example(), {0, counts({2, 0, 1})}, {1, counts({0, 2, 0})}};
  auto out = sdtn_to_inhibitor(in);
  out.net.validate();
  // one target state for transfers: one extra state, p_i plus a place per state
  CHECK(out.net.states.size() == 3);
  CHECK(out.net.places.size() == 3 + 1 + 2);
  CHECK(out.net.transitions.size() == 2 + 1 + 1);
  CHECK(out.init.marking == counts({2, 0, 1, 2, 0, 0}));
  CHECK(out.final.marking == counts({0, 2, 0, 0, 0, 0}));
  CHECK(reach(in) == Verdict::yes);
  CHECK(reach(out) == Verdict::yes);

  // transfer-free: the original transitions unchanged up to p_i and the control places
  SdtnNet plain;
  plain.states = {"a"};
  plain.places = {"x"};
  plain.transitions = {{"inc", 0, 0, counts({0}), counts({1}), false}};
  auto o2 = sdtn_to_inhibitor({plain, {0, counts({0})}, {0, counts({2})}});
  CHECK(o2.net.transitions[0].in == counts({0, 0, 0}));
  CHECK(o2.net.transitions[0].out == counts({1, 0, 0}));
  CHECK(o2.init.marking == counts({0, 0, 0}));
}

TEST_CASE("reduction with several transfer target states uses the lock") {
  auto n = transfer_example();
  n.transitions.pop_back();
  n.states.push_back("c");
  n.transitions.push_back({"go2", 0, 2, counts({0, 0, 0}), counts({0, 0, 0}), true});
  SdtnInstance in{n, {0, counts({1, 0, 1})}, {2, counts({0, 1, 1})}};
  auto out = sdtn_to_inhibitor(in);
  out.net.validate();
  CHECK(reach(in) == Verdict::yes);
  CHECK(reach(out) == Verdict::yes);
  in.final = {2, counts({0, 1, 0})};
  out = sdtn_to_inhibitor(in);
  CHECK(reach(in) == Verdict::no);
  CHECK(reach(out) == Verdict::no);
}

TEST_CASE("reductions agree with each other and with plain search") {
  std::mt19937 rng(11);
  int yes = 0;
  for (int i = 0; i < 60; ++i) {
    auto in = random_sdtn(rng);
    in.net.validate();
    bool truth = bfs_sdtn(in.net, in.init, in.final);
    yes += truth;
    auto direct = reach(in);
    auto inh = reach(sdtn_to_inhibitor(in));
    CHECK(direct == (truth ? Verdict::yes : Verdict::no));
    CHECK(inh == direct);
  }
  CHECK(yes > 5);
  for (int i = 0; i < 60; ++i) {
    auto in = random_inhibitor(rng);
    auto a = reach(in);
    auto b = reach(inhibitor_to_sdtn(in));
    CHECK(a != Verdict::unknown);
    CHECK(a == b);
  }
}

TEST_CASE("inhibited transition writing to its own place") {
  InhibitorNet n;
  n.states = {"a", "b"};
  n.places = {"x"};
  n.transitions = {{"t", 0, 1, counts({0}), counts({2}), false}};
  n.inhibitor_place = 0;
  n.inhibited_transition = 0;
  InhibitorInstance in{n, {0, counts({0})}, {1, counts({2})}};
  auto s = inhibitor_to_sdtn(in);
  s.net.validate();
  CHECK(reach(in) == Verdict::yes);
  CHECK(reach(s) == Verdict::yes);
  in.init.marking = counts({1});
  in.final.marking = counts({3});
  s = inhibitor_to_sdtn(in);
  CHECK(reach(in) == Verdict::no);
  CHECK(reach(s) == Verdict::no);
}

TEST_CASE("drain invariant: p_i equals the transfer-source total outside the drain state") {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto in = random_sdtn(rng);
    auto out = sdtn_to_inhibitor(in);
    int pi = out.net.inhibitor_place;
    int drain = int(in.net.states.size());
    auto sys = as_system(out.net);
    auto violation = [&](const NetConfig& c) {
      if (c.state == drain) return false;
      int s = 0;
      for (auto [sr, tg] : in.net.st) s += c.marking[sr];
      return c.marking[pi] != s;
    };
    auto r = reach_bounded(sys, {out.init}, violation, {1000000, 60, 1});
    CHECK(r.verdict == Verdict::no);
  }
}

TEST_CASE("after a transfer the sources are empty") {
  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto in = random_sdtn(rng);
    NetConfig c = in.init;
    for (int s = 0; s < 10; ++s) {
      std::vector<int> en;
      for (int t = 0; t < int(in.net.transitions.size()); ++t)
        if (enabled(in.net, c, t)) en.push_back(t);
      if (en.empty()) break;
      int t = en[rng() % en.size()];
      c = fire_sdtn(in.net, c, t);
      if (in.net.transitions[t].transfer)
        for (auto [sr, tg] : in.net.st) CHECK(c.marking[sr] == 0);
    }
  }
}

TEST_CASE("search verdicts: witness, exhaustion and truncation") {
  // producer / consumer
  SdtnNet n;
  n.states = {"run", "stop"};
  n.places = {"buf", "done"};
  n.transitions = {{"produce", 0, 0, counts({0, 0}), counts({1, 0}), false},
                   {"consume", 0, 0, counts({1, 0}), counts({0, 1}), false},
                   {"halt", 0, 1, counts({0, 0}), counts({0, 0}), false}};
  auto tgt = Target::all({Target::state_is(1), Target::exactly(1, 3), Target::exactly(0, 0)});
  auto r = reach_bounded(n, {{0, counts({0, 0})}}, tgt, {});
  REQUIRE(r.verdict == Verdict::yes);
  REQUIRE(r.witness);
  NetConfig c{0, counts({0, 0})};
  for (int t : *r.witness) c = fire_sdtn(n, c, t);
  CHECK(tgt.holds(c));
  CHECK(r.witness->size() == 7);

  // unbounded and unreachable: cannot conclude
  auto never = Target::exactly(1, 0);
  auto never2 = Target::all({Target::state_is(1), Target::at_least(1, 1), Target::at_least(0, 100)});
  (void)never;
  auto u = reach_bounded(n, {{0, counts({0, 0})}}, never2, {100000, 12, 1});
  CHECK(u.verdict == Verdict::unknown);
  CHECK(u.truncated);

  // bounded and unreachable
  SdtnNet b;
  b.states = {"a"};
  b.places = {"x", "y"};
  b.transitions = {{"swap", 0, 0, counts({1, 0}), counts({0, 1}), false}};
  auto v = reach_bounded(b, {{0, counts({2, 0})}}, Target::exactly(1, 3), {});
  CHECK(v.verdict == Verdict::no);
  CHECK(v.exhausted);
  auto sb = structural_bounds(b, counts({2, 0}));
  REQUIRE(sb);
  CHECK(*sb == counts({2, 2}));
  CHECK_FALSE(structural_bounds(n, counts({0, 0})));

  // state budget
  auto w = reach_bounded(n, {{0, counts({0, 0})}}, never2, {50, 1000, 1});
  CHECK(w.verdict == Verdict::unknown);
  CHECK_FALSE(w.exhausted);
}

TEST_CASE("structural bounds cover transfers") {
  auto n = transfer_example();
  auto b = structural_bounds(n, counts({1, 1, 1}));
  CHECK_FALSE(b);  // "add" pumps s
  n.transitions.pop_back();
  b = structural_bounds(n, counts({1, 1, 1}));
  REQUIRE(b);
  CHECK((*b)[0] == 1);
  CHECK((*b)[1] == 2);
  CHECK((*b)[2] == 1);
}

TEST_CASE("upward places are accelerated") {
  LazySystem sys;
  sys.places = 2;
  sys.upward = {false, true};
  sys.moves = [](int q) {
    std::vector<Move> m;
    if (q == 0) {
      m.push_back({0, counts({0, 0}), counts({0, 1}), false, -1, 0});
      m.push_back({1, counts({0, 0}), counts({1, 0}), false, -1, 1});
    }
    return m;
  };
  auto r = reach_bounded(sys, {{0, counts({0, 0})}}, [](const NetConfig& c) { return c.state == 1; }, {});
  CHECK(r.verdict == Verdict::yes);
  auto none = reach_bounded(sys, {{0, counts({0, 0})}}, [](const NetConfig& c) { return c.state == 2; }, {});
  CHECK(none.verdict == Verdict::no);
  CHECK(none.explored < 10);
  // accelerated yes comes without a concrete witness
  auto deep = reach_bounded(sys, {{0, counts({0, 0})}},
                            [](const NetConfig& c) { return c.marking[1] == kOmega; }, {});
  CHECK(deep.verdict == Verdict::yes);
  CHECK(deep.accelerated);
  CHECK_FALSE(deep.witness);
}

TEST_CASE("targets: DNF and net surgery agree with direct evaluation") {
  std::mt19937 rng(21);
  for (int i = 0; i < 40; ++i) {
    auto in = random_sdtn(rng);
    int np = int(in.net.places.size()), nq = int(in.net.states.size());
    auto atom = [&]() {
      switch (rng() % 3) {
        case 0:
          return Target::state_is(rng() % nq);
        case 1:
          return Target::exactly(rng() % np, rng() % 3);
        default:
          return Target::at_least(rng() % np, rng() % 3);
      }
    };
    Target t = Target::any({Target::all({atom(), Target::negate(atom())}), Target::negate(Target::any({atom(), atom()}))});
    // DNF matches evaluation on sample configurations
    auto clauses = to_dnf(t, nq);
    for (int s = 0; s < 20; ++s) {
      NetConfig c{int(rng() % nq), random_counts(rng, np, rng() % 5)};
      bool any = false;
      for (const auto& cl : clauses) {
        bool all = true;
        for (const auto& a : cl) all = all && a.holds(c);
        any = any || all;
      }
      CHECK(any == t.holds(c));
    }
    auto direct = reach_bounded(in.net, {in.init}, t, {1000000, 40, 1}).verdict;
    auto plain = target_to_plain(in.net, t);
    plain.net.validate();
    auto surg = reach_bounded(plain.net, {in.init}, Target::config(plain.final), {1000000, 40, 1}).verdict;
    CHECK(direct == surg);
  }
}
