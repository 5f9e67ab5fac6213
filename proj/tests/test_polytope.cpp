#include <doctest.h>

#include <random>

#include "correspondence.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "ptpn/polytope.hpp"

using namespace ptpn;
using namespace instances;
using namespace fixtures;

TEST_CASE("constraint rows for a single created token used after one delay") {
  PtpnNet net;
  net.states = {"q"};
  net.places = {"p"};
  net.place_cost = {0};
  net.transitions.push_back({"make", 0, 0, {}, {}, {{0, Interval::make(0, true, 1, true)}}, 0});
  net.transitions.push_back({"use", 0, 0, {{0, Interval::make(2, true, 3, false)}}, {}, {}, 0});
  Trace tr{{0, {}},
           {DiscreteStep{0, {}, {}, tokens({{0, "1/2"}})}, TimedStep{q("2")}, DiscreteStep{1, tokens({{0, "5/2"}}), {}, {}}}};
  ConstraintSystem sys = build_constraints(net, tr);
  CHECK(sys.m == 1);
  CHECK(sys.n == 1);
  IntMatrix expect{{-1, 0}, {1, 0}, {-1, -1}, {1, 1}, {0, -1}};
  CHECK(sys.matrix == expect);
  CHECK(sys.rhs == std::vector<long>{0, 1, -2, 3, 0});
  CHECK(sys.strict == std::vector<bool>{false, false, false, true, true});
  CHECK(sys.satisfied_by({q("1/2"), q("2")}));
  CHECK_FALSE(sys.satisfied_by({q("1/2"), q("5/2")}));
  CHECK(sys.closure_satisfied_by({q("1"), q("2")}));
  CHECK_FALSE(sys.satisfied_by({q("1"), q("2")}));
}

TEST_CASE("the example computation satisfies its constraint system") {
  PtpnNet net = running_net();
  Trace tr = running_trace();
  TraceSkeleton sk = build_skeleton(net, tr);
  CHECK(sk.m() == 9);
  CHECK(sk.n() == 2);
  CHECK(sk.point[9] == q("0.7"));
  CHECK(sk.point[10] == q("1.3"));
  ConstraintSystem sys = build_constraints(sk);
  CHECK(sys.satisfied_by(sk.point));
  CHECK(is_ptpn_constraint_matrix(sys.matrix, sys.m, sys.n));
  // the p3 token born at 2.2 is consumed by t2 after one delay: y + x_1 in [1,4)
  bool found = false;
  for (size_t r = 0; r < sys.matrix.size(); ++r) {
    int nz = 0;
    for (long e : sys.matrix[r]) nz += e != 0;
    if (nz == 2 && sys.matrix[r][9] == 1 && sys.rhs[r] == 4 && sys.strict[r]) found = true;
  }
  CHECK(found);
  CHECK_THROWS_AS(build_skeleton(net, Trace{tr.init, {tr.steps[2]}}), Error);
}

TEST_CASE("unbounded intervals add no upper row") {
  PtpnNet net;
  net.states = {"q"};
  net.places = {"p"};
  net.place_cost = {0};
  net.transitions.push_back({"make", 0, 0, {}, {}, {{0, Interval::from(1, false)}}, 0});
  ConstraintSystem sys = build_constraints(net, Trace{{0, {}}, {DiscreteStep{0, {}, {}, tokens({{0, "3"}})}}});
  CHECK(sys.matrix == IntMatrix{{-1}});
  CHECK(sys.rhs == std::vector<long>{-1});
  CHECK(sys.strict == std::vector<bool>{true});
}

TEST_CASE("recognizing constraint matrices") {
  IntMatrix shown{
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 0},   {1, 0, 0, 0, 0, 1, 1, 1, 0, 0},    {1, 0, 0, 0, 0, 1, 1, 1, 1, 0},
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},   {0, -1, 0, 0, -1, -1, 0, 0, 0, 0}, {0, 1, 0, 0, 1, 1, 1, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 1, 1, 0}};
  CHECK(is_ptpn_constraint_matrix(shown, 4, 6));
  CHECK_FALSE(is_ptpn_constraint_matrix({{1, 0, 0, 1, 0, 1}}, 2, 4));  // gap in the x block
  CHECK(is_ptpn_constraint_matrix(IntMatrix(3, std::vector<long>(5, 0)), 2, 3));
  CHECK_FALSE(is_ptpn_constraint_matrix({{1, 0, 1, 0}, {1, 0, 0, 1}}, 2, 2));  // block start depends on j
  CHECK_FALSE(is_ptpn_constraint_matrix({{1, 1, 0, 0}}, 2, 2));                // two y entries
  CHECK_FALSE(is_ptpn_constraint_matrix({{1, 0, -1, 0}}, 2, 2));               // mixed signs
  CHECK_FALSE(is_ptpn_constraint_matrix({{0, 0, 2, 0}}, 2, 2));
}

TEST_CASE("determinants and total unimodularity") {
  CHECK(determinant({{1, 1}, {-1, 1}}) == 2);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}) == 6);
  CHECK(determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}) == 0);
  CHECK_FALSE(is_totally_unimodular({{1, 1}, {-1, 1}}));
  IntMatrix id(5, std::vector<long>(5, 0));
  for (int i = 0; i < 5; ++i) id[i][i] = 1;
  CHECK(is_totally_unimodular(id));
  CHECK_THROWS_AS(is_totally_unimodular(IntMatrix(9, std::vector<long>(2, 0))), Error);
  // odd cycle incidence matrix is not totally unimodular
  CHECK_FALSE(is_totally_unimodular({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
}

TEST_CASE("random constraint matrices are totally unimodular") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int it = 0; it < 10000; ++it) {
    int cols = 1 + rng() % 6;
    int m = rng() % (cols + 1);
    int rows = 1 + rng() % 6;
    IntMatrix a = random_ptpn_matrix(rng, rows, m, cols - m);
    REQUIRE(is_ptpn_constraint_matrix(a, m, cols - m));
    CHECK(is_totally_unimodular(a));
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("built systems have the constraint shape and integer vertices") {
  std::mt19937 rng(99);
  int with_vertices = 0;
  for (int it = 0; it < 300; ++it) {
    PtpnNet net = corr::random_net(rng, 1 + rng() % 2, 1 + rng() % 2, 1);
    auto tr = random_trace(rng, net, 1 + rng() % 4);
    TraceSkeleton sk = build_skeleton(net, *tr);
    ConstraintSystem sys = build_constraints(sk);
    CHECK(sys.satisfied_by(sk.point));
    CHECK(is_ptpn_constraint_matrix(sys.matrix, sys.m, sys.n));
    if (sys.m + sys.n > 6) continue;
    if (sys.matrix.size() <= 8) CHECK(is_totally_unimodular(sys.matrix));
    auto vs = vertices(sys);
    with_vertices += !vs.empty();
    for (const auto& v : vs)
      for (const auto& x : v) CHECK(x.get_den() == 1);
  }
  CHECK(with_vertices > 50);
}
