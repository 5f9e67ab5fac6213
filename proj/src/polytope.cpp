#include "ptpn/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace ptpn {

namespace {

struct Live {
  int place;
  Rational age;
  int var;
};

// index of a free live record with the given place and age
int take(std::vector<Live>& live, const std::vector<bool>& busy, const Token& t) {
  for (size_t i = 0; i < live.size(); ++i)
    if (!busy[i] && live[i].place == t.place && live[i].age == t.age) return int(i);
  throw Error("token not present in configuration");
}

bool row_holds(const std::vector<long>& row, long rhs, bool strict, const std::vector<Rational>& v) {
  Rational s = 0;
  for (size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) s += row[i] * v[i];
  return strict ? s < rhs : s <= rhs;
}

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Solves A v = b exactly; empty when A is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  int n = int(a.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> v(n);
  for (int i = 0; i < n; ++i) v[i] = b[i] / a[i][i];
  return v;
}

}  // namespace

bool ConstraintSystem::satisfied_by(const std::vector<Rational>& v) const {
  for (size_t r = 0; r < matrix.size(); ++r)
    if (!row_holds(matrix[r], rhs[r], strict[r], v)) return false;
  return true;
}

bool ConstraintSystem::closure_satisfied_by(const std::vector<Rational>& v) const {
  for (size_t r = 0; r < matrix.size(); ++r)
    if (!row_holds(matrix[r], rhs[r], false, v)) return false;
  return true;
}

TraceSkeleton build_skeleton(const PtpnNet& net, const Trace& trace) {
  replay(net, trace);  // rejects traces that do not compose
  TraceSkeleton sk;
  std::vector<Live> live;
  for (const auto& t : trace.init.marking) {
    live.push_back({t.place, t.age, sk.m()});
    sk.tokens.push_back({t.place, std::nullopt, -1});
    sk.point.push_back(t.age);
  }
  std::vector<Rational> delays;
  for (const auto& step : trace.steps) {
    if (const auto* ts = std::get_if<TimedStep>(&step)) {
      for (auto& l : live) {
        l.age += ts->delay;
        if (sk.tokens[l.var].first_delay < 0) sk.tokens[l.var].first_delay = sk.delays;
      }
      delays.push_back(ts->delay);
      ++sk.delays;
      continue;
    }
    const auto& ds = std::get<DiscreteStep>(step);
    const Transition& tr = net.transitions[ds.transition];
    auto in_arcs = match(ds.in, tr.in);
    auto read_arcs = match(ds.read, tr.read);
    auto out_arcs = match(ds.out, tr.out);
    std::vector<bool> busy(live.size(), false);
    auto use = [&](const Token& tok, const Interval& iv) {
      int i = take(live, busy, tok);
      busy[i] = true;
      int v = live[i].var;
      int fd = sk.tokens[v].first_delay;
      if (fd < 0)
        sk.uses.push_back({v, iv, 0, 0});
      else
        sk.uses.push_back({v, iv, fd, sk.delays - fd});
      return i;
    };
    std::vector<int> consumed;
    for (size_t i = 0; i < ds.in.size(); ++i) consumed.push_back(use(ds.in[i], tr.in[(*in_arcs)[i]].iv));
    for (size_t i = 0; i < ds.read.size(); ++i) use(ds.read[i], tr.read[(*read_arcs)[i]].iv);
    std::sort(consumed.rbegin(), consumed.rend());
    for (int i : consumed) live.erase(live.begin() + i);
    for (size_t i = 0; i < ds.out.size(); ++i) {
      live.push_back({ds.out[i].place, ds.out[i].age, sk.m()});
      sk.tokens.push_back({ds.out[i].place, tr.out[(*out_arcs)[i]].iv, -1});
      sk.point.push_back(ds.out[i].age);
    }
  }
  sk.point.insert(sk.point.end(), delays.begin(), delays.end());
  return sk;
}

ConstraintSystem build_constraints(const TraceSkeleton& sk) {
  ConstraintSystem sys;
  sys.m = sk.m();
  sys.n = sk.n();
  int width = sys.m + sys.n;
  auto add = [&](int y, int first, int len, long sign, long rhs, bool strict) {
    std::vector<long> row(width, 0);
    if (y >= 0) row[y] = sign;
    for (int i = 0; i < len; ++i) row[sys.m + first + i] = sign;
    sys.matrix.push_back(row);
    sys.rhs.push_back(rhs);
    sys.strict.push_back(strict);
  };
  auto bounds = [&](int y, int first, int len, const Interval& iv) {
    add(y, first, len, -1, -iv.lo, !iv.lo_closed);
    if (!iv.hi_inf) add(y, first, len, 1, iv.hi, !iv.hi_closed);
  };
  for (int j = 0; j < sys.m; ++j) {
    if (sk.tokens[j].created_by)
      bounds(j, 0, 0, *sk.tokens[j].created_by);
    else
      add(j, 0, 0, -1, 0, false);
    std::vector<const TraceSkeleton::Use*> uses;
    for (const auto& u : sk.uses)
      if (u.token == j) uses.push_back(&u);
    std::stable_sort(uses.begin(), uses.end(), [](auto* a, auto* b) { return a->length < b->length; });
    for (const auto* u : uses) bounds(j, u->first_delay, u->length, u->iv);
  }
  for (int i = 0; i < sys.n; ++i) add(-1, i, 1, -1, 0, true);
  return sys;
}

ConstraintSystem build_constraints(const PtpnNet& net, const Trace& trace) {
  return build_constraints(build_skeleton(net, trace));
}

bool is_ptpn_constraint_matrix(const IntMatrix& matrix, int m, int n) {
  std::vector<int> start(m, -1);
  for (const auto& row : matrix) {
    if (int(row.size()) != m + n) return false;
    int y = -1;
    for (int j = 0; j < m; ++j) {
      if (row[j] == 0) continue;
      if (y >= 0 || (row[j] != 1 && row[j] != -1)) return false;
      y = j;
    }
    // the x part must be a single block of one sign
    int first = -1, last = -1;
    long sign = y >= 0 ? row[y] : 0;
    for (int i = 0; i < n; ++i) {
      long e = row[m + i];
      if (e == 0) continue;
      if (e != 1 && e != -1) return false;
      if (sign == 0) sign = e;
      if (e != sign) return false;
      if (first < 0) first = i;
      if (last >= 0 && last != i - 1) return false;
      last = i;
    }
    if (y >= 0 && first >= 0) {
      if (start[y] >= 0 && start[y] != first) return false;
      start[y] = first;
    }
  }
  return true;
}

long determinant(const IntMatrix& square) {
  int n = int(square.size());
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = square[i][j];
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  mpz_class d = a[n - 1][n - 1] * sign;
  return d.get_si();
}

bool is_totally_unimodular(const IntMatrix& matrix, int cap) {
  int rows = int(matrix.size());
  int cols = rows ? int(matrix[0].size()) : 0;
  if (rows > cap || cols > cap) throw Error("matrix exceeds the total unimodularity check cap");
  for (const auto& r : matrix)
    for (long e : r)
      if (e < -1 || e > 1) return false;
  bool ok = true;
  for (int k = 2; k <= std::min(rows, cols) && ok; ++k)
    for_each_subset(rows, k, [&](const std::vector<int>& rs) {
      for_each_subset(cols, k, [&](const std::vector<int>& cs) {
        IntMatrix sub(k, std::vector<long>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[i][j] = matrix[rs[i]][cs[j]];
        long d = determinant(sub);
        if (d < -1 || d > 1) ok = false;
        return ok;
      });
      return ok;
    });
  return ok;
}

std::vector<std::vector<Rational>> vertices(const ConstraintSystem& sys, int cap) {
  int k = sys.m + sys.n;
  if (k > cap) throw Error("too many variables for vertex enumeration");
  std::set<std::vector<Rational>> found;
  for_each_subset(int(sys.matrix.size()), k, [&](const std::vector<int>& rs) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int r : rs) {
      a.emplace_back(sys.matrix[r].begin(), sys.matrix[r].end());
      b.emplace_back(sys.rhs[r]);
    }
    if (auto v = solve(a, b); v && sys.closure_satisfied_by(*v)) found.insert(*v);
    return true;
  });
  return {found.begin(), found.end()};
}

}  // namespace ptpn
