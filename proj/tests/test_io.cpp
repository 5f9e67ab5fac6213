#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ptpn/io.hpp"

using namespace ptpn;
using namespace fixtures;

namespace {

std::string data(const std::string& name) { return read_file(std::string(PTPN_DATA_DIR) + "/" + name); }

}  // namespace

TEST_CASE("intervals") {
  Interval a = parse_interval("[1,5)");
  CHECK(a.lo == 1);
  CHECK(a.lo_closed);
  CHECK(a.hi == 5);
  CHECK(!a.hi_closed);
  CHECK(!a.hi_inf);
  Interval b = parse_interval("(2,inf)");
  CHECK(b.lo == 2);
  CHECK(!b.lo_closed);
  CHECK(b.hi_inf);
  CHECK(parse_interval(" [ 0 , 0 ] ") == Interval::make(0, true, 0, true));
  CHECK_THROWS_AS(parse_interval("(2,2)"), ParseError);
  CHECK_THROWS_AS(parse_interval("[3,1]"), ParseError);
  CHECK_THROWS_AS(parse_interval("[1,inf]"), ParseError);
  CHECK_THROWS_AS(parse_interval("[1,2"), ParseError);
}

TEST_CASE("the bundled net round-trips byte for byte") {
  std::string text = data("running.net");
  NetDocument doc = parse_net(text);
  CHECK(print(doc) == text);
  const PtpnNet& n = doc.ptpn;
  PtpnNet ref = running_net();
  CHECK(n.states == ref.states);
  CHECK(n.places == ref.places);
  CHECK(n.place_cost == ref.place_cost);
  REQUIRE(n.transitions.size() == 2);
  for (int t = 0; t < 2; ++t) {
    CHECK(n.transitions[t].in == ref.transitions[t].in);
    CHECK(n.transitions[t].read == ref.transitions[t].read);
    CHECK(n.transitions[t].out == ref.transitions[t].out);
    CHECK(n.transitions[t].cost == ref.transitions[t].cost);
  }
  for (const char* f : {"inhibitor_reach.net", "inhibitor_blocked.net", "transfer.net"}) {
    NetDocument d = parse_net(data(f));
    CHECK(parse_net(print(d)).kind == d.kind);
    CHECK(print(parse_net(print(d))) == print(d));
  }
}

TEST_CASE("the bundled trace costs 279/10 and round-trips") {
  PtpnNet net = running_net();
  std::string text = data("running.trace");
  TraceDocument doc = parse_trace(text, net);
  REQUIRE(doc.declared_cost);
  CHECK(*doc.declared_cost == q("279/10"));
  CHECK(trace_cost(net, doc.trace) == q("279/10"));
  CHECK(print_trace(net, doc.trace) == text);
  Trace ref = running_trace();
  CHECK(doc.trace.init == ref.init);
  CHECK(doc.trace.steps.size() == ref.steps.size());
}

TEST_CASE("the bundled configuration encodes to c1") {
  PtpnNet net = running_net();
  ConcreteConfig c = parse_config(data("c1.config"), net);
  CHECK(c == abstraction_config());
  CHECK(encode(net, c) == c1());
  CHECK(parse_config(print_config(net, c), net) == c);
}

TEST_CASE("abstract configurations parse from their printed form") {
  PtpnNet net = running_net();
  for (const auto& a : {c1(), c2(), c3()}) CHECK(parse_abstract(to_string(a, net), net) == a);
  CHECK_THROWS_AS(parse_abstract("q1 <[] | [] | >", net), ParseError);
  CHECK_THROWS_AS(parse_abstract("q1 < | [(p1,7)] | >", net), ParseError);
}

TEST_CASE("parse errors carry positions") {
  auto fails_at = [](const std::string& text, int line, int column) {
    try {
      parse_net(text);
    } catch (const ParseError& e) {
      CHECK_MESSAGE(e.line == line, e.what());
      CHECK_MESSAGE(e.column == column, e.what());
      return;
    }
    FAIL("no error for: " << text);
  };
  fails_at("net ptpn\nstates a\nplaces p\ntransition t a -> b : \n", 4, 19);
  fails_at("net ptpn\nstates a\nplaces p\ntransition t a -> a : (r, [0,1], in)\n", 4, 24);
  fails_at("net ptpn\nstates a\nplaces p\ntransition t a -> a : (p, [0,1], eat)\n", 4, 34);
  fails_at("net ptpn\nstates a\nplaces p\ntransition t a -> a : (p, (1,1), in)\n", 4, 27);
  fails_at("# comment\n\nnet petri\n", 3, 5);
  fails_at("net sdtn\nstates a\nplaces p\ninhibitor p t\n", 4, 1);
  fails_at("net ptpn\nstates a a\n", 2, 10);
  CHECK_THROWS_AS(parse_net(""), ParseError);
  CHECK_THROWS_AS(parse_trace("trace\ndelay 1\n", running_net()), ParseError);
  CHECK_THROWS_AS(parse_trace("trace\ninit q1 : p9@1\n", running_net()), ParseError);
}

TEST_CASE("random nets round-trip") {
  std::mt19937 rng(73);
  auto iv = [&]() {
    long lo = rng() % 3;
    if (rng() % 3 == 0) return Interval::from(lo, rng() % 2);
    long hi = lo + rng() % 3;
    return hi == lo ? Interval::make(lo, true, hi, true) : Interval::make(lo, rng() % 2, hi, rng() % 2);
  };
  for (int it = 0; it < 50; ++it) {
    NetDocument d;
    PtpnNet& n = d.ptpn;
    n.states = {"a", "b"};
    n.places = {"x", "y", "z"};
    n.place_cost = {long(rng() % 3), 0, long(rng() % 5)};
    for (int t = 0; t < 3; ++t) {
      Transition tr{"t" + std::to_string(t), int(rng() % 2), int(rng() % 2), {}, {}, {}, long(rng() % 4)};
      for (int k = rng() % 3; k > 0; --k) tr.in.push_back({int(rng() % 3), iv()});
      for (int k = rng() % 2; k > 0; --k) tr.read.push_back({int(rng() % 3), iv()});
      for (int k = rng() % 3; k > 0; --k) tr.out.push_back({int(rng() % 3), iv()});
      n.transitions.push_back(tr);
    }
    Marking m;
    for (int k = rng() % 4; k > 0; --k) m.push_back({int(rng() % 3), make_rational(long(rng() % 20), long(1 + rng() % 7))});
    normalize(m);
    d.init = ConcreteConfig{0, m};
    d.final_state = 1;
    std::string text = print(d);
    NetDocument back = parse_net(text);
    CHECK(print(back) == text);
    CHECK(back.init == d.init);
  }
}
