#include <doctest.h>

#include <random>
#include <set>

#include "correspondence.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "ptpn/encoder.hpp"

using namespace ptpn;
using namespace instances;
using namespace fixtures;

TEST_CASE("enc and dec are inverse (random)") {
  std::mt19937 rng(5);
  PtpnNet net = running_net();
  long v = 4;
  Alphabet sigma = alphabet_for(net, v);
  for (int it = 0; it < 1000; ++it) {
    BudgetConfig b = random_budget_config(rng, net, v, 3, 4);
    Word w = enc(sigma, b);
    CHECK(dec(sigma, w) == b);
    CHECK(enc(sigma, dec(sigma, w)) == w);
  }
}

TEST_CASE("encoding layout") {
  PtpnNet net = running_net();
  Alphabet sigma = alphabet_for(net, 2);
  CHECK(sigma.ages == net.cmax() + 2);
  BudgetConfig empty{{1, {}, {}, {}}, 2};
  Word w = enc(sigma, empty);
  CHECK(w == Word{sigma.state(1, 2), sigma.dollar(), sigma.dollar()});
  CHECK(dec(sigma, w) == empty);

  BudgetConfig b{c1(), 1};
  Word e = enc(sigma, b);
  // low groups from the last to the first, then the center, then high groups from b_{-1} to b_{-m}
  CHECK(to_string(e, sigma, net) ==
        "(q1,1) (p1,2) (p2,1) (p2,6) (p3,6) $ (p1,1) (p2,1) (p3,6) $ (p1,3) (p3,2) (p3,4) # (p1,2) (p2,6) (p3,0)");
  CHECK_THROWS_AS(dec(sigma, Word{sigma.state(0, 0), sigma.dollar()}), Error);
  CHECK_THROWS_AS(dec(sigma, Word{sigma.state(0, 0), sigma.dollar(), sigma.dollar(), sigma.dollar()}), Error);
  CHECK_THROWS_AS(dec(sigma, Word{sigma.state(0, 0), sigma.hash(), sigma.dollar(), sigma.dollar()}), Error);
  CHECK_THROWS_AS(dec(sigma, Word{sigma.dollar(), sigma.dollar()}), Error);
  CHECK_THROWS_AS(enc(sigma, BudgetConfig{c1(), 3}), Error);
}

TEST_CASE("universal and cost-bounded automata") {
  std::mt19937 rng(8);
  PtpnNet net = running_net();
  long v = 3;
  Alphabet sigma = alphabet_for(net, v);
  Nfa u = automaton_universal(net, v);
  Nfa cb = automaton_cost_bounded(net, v);
  for (int it = 0; it < 300; ++it) {
    BudgetConfig b = random_budget_config(rng, net, v, 2, 3);
    Word w = enc(sigma, b);
    CHECK(u.accepts(w));
    long cost_tokens = 0;
    for (int s : w)
      if (sigma.is_token(s) && net.is_cost_place(sigma.token_of(s).place)) ++cost_tokens;
    CHECK(cb.accepts(w) == (cost_tokens <= v));
  }
  int st = sigma.state(0, 0), d = sigma.dollar(), h = sigma.hash(), t = sigma.token(0, 1);
  CHECK(u.accepts({st, d, d}));
  CHECK_FALSE(u.accepts({st, d, d, d}));
  CHECK_FALSE(u.accepts({st, t, h, h, t, d, d}));
  CHECK_FALSE(u.accepts({st, h, t, d, d}));
  CHECK_FALSE(u.accepts({st, d, d, t, h}));
  // unsorted groups are not canonical encodings
  CHECK_FALSE(u.accepts({st, sigma.token(1, 0), sigma.token(0, 0), d, d}));
  CHECK(u.accepts({st, d, sigma.token(0, 0), sigma.token(1, 0), d}));
}

TEST_CASE("upward-closure automaton matches the free order (random)") {
  std::mt19937 rng(13);
  PtpnNet net = running_net();
  long v = 2;
  Alphabet sigma = alphabet_for(net, v);
  int positives = 0;
  for (int it = 0; it < 150; ++it) {
    std::vector<BudgetConfig> basis{random_budget_config(rng, net, v, 2, 2)};
    if (rng() % 2) basis.push_back(random_budget_config(rng, net, v, 1, 2));
    Nfa a = automaton_uc(net, v, basis);
    for (int j = 0; j < 20; ++j) {
      BudgetConfig x = random_budget_config(rng, net, v, 2, 3);
      if (j % 2) {
        // grow a basis element by free tokens
        x = basis[0];
        for (int k = 0; k < 3; ++k) {
          Group extra{{2, int(rng() % sigma.ages)}};
          int where = rng() % 3;
          if (where == 0) x.a.center = merged(x.a.center, extra);
          else if (where == 1) x.a.low.insert(x.a.low.begin() + rng() % (x.a.low.size() + 1), extra);
          else x.a.high.insert(x.a.high.begin() + rng() % (x.a.high.size() + 1), extra);
        }
      }
      bool expect = false;
      for (const auto& c : basis) expect = expect || leq(net, OrderKind::f, c, x);
      positives += expect;
      CHECK_MESSAGE(a.accepts(enc(sigma, x)) == expect, to_string(x, net));
    }
  }
  CHECK(positives > 100);
}

TEST_CASE("generated net shape") {
  PtpnNet net = running_net();
  long v = 2;
  Alphabet sigma = alphabet_for(net, v);
  BudgetConfig init{c1(), 2};
  BudgetConfig target{{1, {}, {}, {}}, 1};
  SdtnEncoding e(net, v, singleton(sigma.size(), enc(sigma, init)), target);
  int ages = net.cmax() + 2;
  CHECK(e.place_count() == 4 * int(net.places.size()) * ages);
  auto st = e.transfer();
  CHECK(st.size() == net.places.size() * size_t(ages));
  std::set<int> src, tgt;
  for (auto [a, b] : st) {
    src.insert(a);
    tgt.insert(b);
  }
  for (int s : src) CHECK(tgt.count(s) == 0);
  CHECK(src.size() == st.size());
  CHECK(e.rmax() == 1);
  auto names = e.place_names();
  CHECK(names[e.zero_place(1, 2)] == "zero(p2,2)");
  CHECK(names[e.debt_place(0, 0)] == "idebt(p1,0)");

  SearchBudget budget;
  budget.max_states = 200000;
  auto sys = e.system();
  auto r = reach_bounded(sys, {e.initial()}, [&](const NetConfig& c) { return e.is_final(c); }, budget);
  auto stats = e.stats();
  CHECK(stats.controls > 0);
  CHECK(double(stats.controls) <= stats.control_bound);
  // every transfer move leaves the zero places empty
  for (size_t i = 0; i + 1 < r.path.size(); ++i) {
    EncState from = e.control(r.path[i].state), to = e.control(r.path[i + 1].state);
    if (from.mode == Mode::type1_2 && to.mode == Mode::type2_1)
      for (auto [z, l] : st) CHECK(r.path[i + 1].marking[z] == 0);
  }
}

TEST_CASE("oracle on the example net") {
  PtpnNet net = running_net();
  long v = 3;
  Alphabet sigma = alphabet_for(net, v);
  BudgetConfig init{c1(), 3};
  Nfa single = singleton(sigma.size(), enc(sigma, init));
  SearchBudget budget;

  SUBCASE("zero steps") {
    auto r = oracle_exists_init(net, v, single, {init}, budget);
    CHECK(r.verdict == Verdict::yes);
    REQUIRE(r.witness);
    CHECK(*r.witness == init);
  }
  SUBCASE("wrong control state") {
    BudgetConfig other = init;
    other.a.state = 1;
    other.budget = 3;
    auto r = oracle_exists_init(net, v, single, {other}, budget);
    CHECK(r.verdict == Verdict::no);
  }
  SUBCASE("dropping free tokens stays in the upward closure") {
    std::mt19937 rng(1);
    BudgetConfig smaller = shrink(rng, net, init);
    auto r = oracle_exists_init(net, v, single, {smaller}, budget);
    CHECK(r.verdict == Verdict::yes);
  }
  SUBCASE("one A-step") {
    auto succ = a_successors(net, init);
    REQUIRE(!succ.empty());
    for (size_t i = 0; i < std::min<size_t>(succ.size(), 6); ++i) {
      auto r = oracle_exists_init(net, v, single, {succ[i].first}, budget);
      CHECK_MESSAGE(r.verdict == Verdict::yes, to_string(succ[i].first, net));
    }
  }
}

TEST_CASE("oracle agrees with exhaustive A-reachability on small nets (random)") {
  std::mt19937 rng(21);
  int yes = 0, no = 0, unknown = 0;
  for (int it = 0; it < 40; ++it) {
    PtpnNet net = conservative_net(rng, 2, 3);
    long v = 1 + rng() % 3;
    Alphabet sigma = alphabet_for(net, v);
    BudgetConfig init = random_budget_config(rng, net, v, 2, 2);
    if (init.a.token_count() > 3) continue;
    auto closure = a_closure(net, init, 20000);
    std::vector<BudgetConfig> reach(closure.begin(), closure.end());
    Nfa single = singleton(sigma.size(), enc(sigma, init));
    for (int j = 0; j < 4; ++j) {
      BudgetConfig target = j < 2 ? shrink(rng, net, reach[rng() % reach.size()])
                                  : random_budget_config(rng, net, v, 1, 2);
      bool expect = false;
      for (const auto& c : reach) expect = expect || leq(net, OrderKind::f, target, c);
      SearchBudget budget;
      budget.max_states = 300000;
      auto r = oracle_exists_init(net, v, single, {target}, budget);
      if (r.verdict == Verdict::unknown) {
        ++unknown;
        continue;
      }
      CHECK_MESSAGE((r.verdict == Verdict::yes) == expect,
                    (to_string(init, net) + " ->* " + to_string(target, net)));
      (expect ? yes : no)++;
    }
  }
  MESSAGE("yes " << yes << " no " << no << " unknown " << unknown);
  CHECK(yes >= 10);
  CHECK(no >= 10);
  CHECK(unknown <= (yes + no) / 4);
}

TEST_CASE("oracle over a language of initial configurations") {
  PtpnNet net = running_net();
  long v = 1;
  Alphabet sigma = alphabet_for(net, v);
  BudgetConfig a{{0, {}, group({{2, 1}}), {}}, 1};
  BudgetConfig b{{1, {}, group({{2, 2}}), {}}, 0};
  Nfa lang = unite(singleton(sigma.size(), enc(sigma, a)), singleton(sigma.size(), enc(sigma, b)));
  SearchBudget budget;
  auto r = oracle_exists_init(net, v, lang, {b}, budget);
  CHECK(r.verdict == Verdict::yes);
  REQUIRE(r.witness);
  CHECK(lang.accepts(enc(sigma, *r.witness)));
  BudgetConfig never{{1, {}, group({{0, 0}, {0, 0}, {0, 0}}), {}}, 0};
  CHECK(oracle_exists_init(net, v, lang, {never}, budget).verdict == Verdict::no);
}

TEST_CASE("unbounded cost tokens give an unknown verdict") {
  PtpnNet net;
  net.states = {"q"};
  net.places = {"p1", "p2"};
  net.place_cost = {1, 0};
  net.transitions = {Transition{"grow", 0, 0, {}, {}, {{0, Interval::make(0, true, 0, true)}}, 0}};
  long v = 0;
  Alphabet sigma = alphabet_for(net, v);
  BudgetConfig init{{0, {}, {}, {}}, 0};
  BudgetConfig target{{0, {}, group({{1, 0}}), {}}, 0};
  SearchBudget budget;
  budget.bound = 4;
  auto r = oracle_exists_init(net, v, singleton(sigma.size(), enc(sigma, init)), {target}, budget);
  CHECK(r.verdict == Verdict::unknown);
  CHECK_FALSE(r.diagnostic.empty());
}
