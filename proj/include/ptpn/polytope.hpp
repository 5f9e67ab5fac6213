#pragma once

#include "ptpn/core.hpp"

#include <optional>
#include <vector>

namespace ptpn {

using IntMatrix = std::vector<std::vector<long>>;

// Variables of a computation skeleton: y_1..y_m (token ages at birth, or at the start for
// initial tokens) followed by x_1..x_n (delays of the timed steps).
struct TraceSkeleton {
  struct Birth {
    int place = 0;
    std::optional<Interval> created_by;  // empty for tokens of the initial configuration
    int first_delay = -1;                // 0-based index of the first timed step after birth, -1 if none
  };
  struct Use {
    int token = 0;
    Interval iv;
    int first_delay = 0;  // contiguous block [first_delay, first_delay + length)
    int length = 0;
  };
  std::vector<Birth> tokens;
  std::vector<Use> uses;
  int delays = 0;
  std::vector<Rational> point;  // the values of (y, x) realised by the trace

  int m() const { return int(tokens.size()); }
  int n() const { return delays; }
};

// Rows read M v <= rhs, or M v < rhs when strict.
struct ConstraintSystem {
  IntMatrix matrix;
  std::vector<long> rhs;
  std::vector<bool> strict;
  int m = 0;
  int n = 0;

  bool satisfied_by(const std::vector<Rational>& v) const;
  bool closure_satisfied_by(const std::vector<Rational>& v) const;
};

TraceSkeleton build_skeleton(const PtpnNet& net, const Trace& trace);
ConstraintSystem build_constraints(const TraceSkeleton& sk);
ConstraintSystem build_constraints(const PtpnNet& net, const Trace& trace);

bool is_ptpn_constraint_matrix(const IntMatrix& matrix, int m, int n);

long determinant(const IntMatrix& square);  // exact, Bareiss elimination
bool is_totally_unimodular(const IntMatrix& matrix, int cap = 8);

// Vertices of the closed polyhedron { v : M v <= rhs } by enumeration of row bases.
std::vector<std::vector<Rational>> vertices(const ConstraintSystem& sys, int cap = 8);

}  // namespace ptpn
