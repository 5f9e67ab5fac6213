#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ptpn {

enum class Verdict { yes, no, unknown };

std::string to_string(Verdict v);

inline Verdict verdict_or(Verdict a, Verdict b) {
  if (a == Verdict::yes || b == Verdict::yes) return Verdict::yes;
  if (a == Verdict::unknown || b == Verdict::unknown) return Verdict::unknown;
  return Verdict::no;
}

template <class T>
using Leq = std::function<bool(const T&, const T&)>;

template <class T>
bool in_upward(const T& x, const std::vector<T>& basis, const Leq<T>& leq) {
  for (const auto& b : basis)
    if (leq(b, x)) return true;
  return false;
}

// Antichain with the same upward closure; among equivalent elements the first one is kept.
template <class T>
std::vector<T> minimize(const std::vector<T>& xs, const Leq<T>& leq) {
  std::vector<T> out;
  for (size_t i = 0; i < xs.size(); ++i) {
    bool drop = false;
    for (size_t j = 0; j < xs.size() && !drop; ++j) {
      if (i == j || !leq(xs[j], xs[i])) continue;
      // xs[j] <= xs[i]: drop i unless they are equivalent and i comes first
      drop = !leq(xs[i], xs[j]) || j < i;
    }
    if (!drop) out.push_back(xs[i]);
  }
  return out;
}

// up(b) is contained in up(a)
template <class T>
bool dominates(const std::vector<T>& a, const std::vector<T>& b, const Leq<T>& leq) {
  for (const auto& x : b)
    if (!in_upward(x, a, leq)) return false;
  return true;
}

template <class T>
bool same_upward(const std::vector<T>& a, const std::vector<T>& b, const Leq<T>& leq) {
  return dominates(a, b, leq) && dominates(b, a, leq);
}

// Answer of the query "is some element of V outside up(X)?", optionally with such an element.
template <class T>
struct OutsideAnswer {
  Verdict exists = Verdict::unknown;
  std::optional<T> witness;
};

template <class T>
struct BasisResult {
  Verdict status = Verdict::yes;  // yes: complete basis; unknown: some query failed
  std::vector<T> basis;
  size_t oracle_calls = 0;
  std::string diagnostic;
};

struct GvjLimits {
  size_t max_rounds = 64;       // enumeration rounds tried per missing element
  size_t max_iterations = 1000;  // elements added to X
};

// Computes the minimal elements of an upward-closed set V.
//   enumerate(r): the elements of V produced in round r; every element of V appears in some round
//   outside(X):   whether some element of V is not in up(X)
template <class T>
BasisResult<T> gvj(const Leq<T>& leq, const std::function<std::vector<T>(size_t)>& enumerate,
                   const std::function<OutsideAnswer<T>(const std::vector<T>&)>& outside, GvjLimits limits = {}) {
  BasisResult<T> res;
  std::vector<T> x;
  for (size_t it = 0; it < limits.max_iterations; ++it) {
    OutsideAnswer<T> ans = outside(x);
    ++res.oracle_calls;
    if (ans.exists == Verdict::unknown) {
      res.status = Verdict::unknown;
      res.basis = minimize(x, leq);
      res.diagnostic = "oracle returned unknown after " + std::to_string(x.size()) + " elements";
      return res;
    }
    if (ans.exists == Verdict::no) {
      res.basis = minimize(x, leq);
      return res;
    }
    std::optional<T> found;
    if (ans.witness && !in_upward(*ans.witness, x, leq)) found = ans.witness;
    for (size_t r = 0; !found && r < limits.max_rounds; ++r)
      for (const auto& v : enumerate(r))
        if (!in_upward(v, x, leq)) {
          found = v;
          break;
        }
    if (!found) {
      res.status = Verdict::unknown;
      res.basis = minimize(x, leq);
      res.diagnostic = "enumeration budget exhausted while the oracle reports a missing element";
      return res;
    }
    x.push_back(*found);
  }
  res.status = Verdict::unknown;
  res.basis = minimize(x, leq);
  res.diagnostic = "iteration budget exhausted";
  return res;
}

// Vectors over N extended with omega.
using OmegaVector = std::vector<long>;
inline constexpr long omega = std::numeric_limits<long>::max();

// Minimal elements of an upward-closed V in N^k from the predicate "down(u) meets V".
BasisResult<OmegaVector> valk_jantzen(int k, const std::function<bool(const OmegaVector&)>& meets_down,
                                      size_t max_iterations = 10000);

// Ideals (omega-vectors) whose union is the complement of up(basis) in N^k.
std::vector<OmegaVector> complement_ideals(int k, const std::vector<OmegaVector>& basis);

bool vector_leq(const OmegaVector& a, const OmegaVector& b);

// A structure for the phase construction. All oracles may answer unknown.
template <class T>
struct PhaseStructure {
  Leq<T> leq;
  T init;
  std::function<Verdict()> init_reaches_f_by_a;                   // init ->_A* F
  std::function<BasisResult<T>()> pre_a_star_f_over_c;            // min of Pre*_A(F) within up(C)
  std::function<BasisResult<T>(const std::vector<T>&)> pre_b;    // min of Pre_B(up(X))
  std::function<Verdict(const T&, const std::vector<T>&)> pre_a_star_member;  // s ->_A* up(U)
  // some z in up(C) \ up(X) with z ->_A* up(U)
  std::function<OutsideAnswer<T>(const std::vector<T>&, const std::vector<T>&)> pre_a_star_outside;
  std::function<std::vector<T>(size_t)> enumerate_up_c;  // fair enumeration of up(C)
  GvjLimits gvj_limits;
  size_t max_phases = 50;
};

template <class T>
struct PhaseResult {
  Verdict verdict = Verdict::unknown;
  Verdict direct = Verdict::unknown;  // init ->_A* F
  Verdict via_b = Verdict::unknown;   // init ->_A* (->_B ->_A*)+ F
  std::vector<T> fixpoint;            // U_n
  std::vector<size_t> chain_sizes;
  size_t phases = 0;
  std::string diagnostic;
};

template <class T>
PhaseResult<T> phase_reachable(const PhaseStructure<T>& s) {
  PhaseResult<T> res;
  res.direct = s.init_reaches_f_by_a();
  if (res.direct == Verdict::yes) {
    res.verdict = Verdict::yes;
    return res;
  }
  auto fail = [&](const std::string& why) {
    res.via_b = Verdict::unknown;
    res.verdict = verdict_or(res.direct, Verdict::unknown);
    res.diagnostic = why;
    return res;
  };
  BasisResult<T> u1p = s.pre_a_star_f_over_c();
  if (u1p.status != Verdict::yes) return fail("Pre*_A(F) basis: " + u1p.diagnostic);
  BasisResult<T> u1 = s.pre_b(u1p.basis);
  if (u1.status != Verdict::yes) return fail("Pre_B basis: " + u1.diagnostic);
  std::vector<T> u = minimize(u1.basis, s.leq);
  res.chain_sizes.push_back(u.size());
  bool converged = u.empty();
  for (size_t k = 0; !converged; ++k) {
    if (k >= s.max_phases) return fail("phase budget exhausted after " + std::to_string(k) + " phases");
    ++res.phases;
    std::vector<T> current = u;
    auto enumerate = [&](size_t r) {
      std::vector<T> out;
      for (const auto& z : s.enumerate_up_c(r))
        if (s.pre_a_star_member(z, current) == Verdict::yes) out.push_back(z);
      return out;
    };
    auto outside = [&](const std::vector<T>& x) { return s.pre_a_star_outside(x, current); };
    BasisResult<T> next_p = gvj<T>(s.leq, enumerate, outside, s.gvj_limits);
    if (next_p.status != Verdict::yes) return fail("Pre*_A(up U) basis: " + next_p.diagnostic);
    BasisResult<T> next_pp = s.pre_b(next_p.basis);
    if (next_pp.status != Verdict::yes) return fail("Pre_B basis: " + next_pp.diagnostic);
    std::vector<T> joined = next_pp.basis;
    joined.insert(joined.end(), u.begin(), u.end());
    std::vector<T> next = minimize(joined, s.leq);
    if (!dominates(next, u, s.leq)) return fail("chain is not increasing");
    converged = dominates(u, next, s.leq);
    u = next;
    res.chain_sizes.push_back(u.size());
  }
  res.fixpoint = u;
  res.via_b = u.empty() ? Verdict::no : s.pre_a_star_member(s.init, u);
  res.verdict = verdict_or(res.direct, res.via_b);
  return res;
}

}  // namespace ptpn
