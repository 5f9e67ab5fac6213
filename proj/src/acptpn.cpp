#include "ptpn/acptpn.hpp"

namespace ptpn {

std::string to_string(const BudgetConfig& b, const PtpnNet& net) {
  return to_string(b.a, net) + " y=" + std::to_string(b.budget);
}

BudgetConfig lift(long v, const AbstractConfig& a, long y) {
  if (y < 0 || y > v) throw Error("budget " + std::to_string(y) + " outside [0, " + std::to_string(v) + "]");
  return {a, y};
}

std::vector<std::pair<BudgetConfig, AbstractStep>> a_successors(const PtpnNet& net, const BudgetConfig& b) {
  std::vector<std::pair<BudgetConfig, AbstractStep>> out;
  for (size_t t = 0; t < net.transitions.size(); ++t) {
    long c = net.transitions[t].cost;
    if (b.budget < c || net.transitions[t].from != b.a.state) continue;
    for (auto& [next, step] : discrete_successors(net, b.a, int(t))) out.push_back({{std::move(next), b.budget - c}, step});
  }
  for (int kind : {1, 2})
    for (auto& [next, step] : timed_successors(b.a, kind, net.cmax())) out.push_back({{std::move(next), b.budget}, step});
  return out;
}

std::vector<std::pair<BudgetConfig, AbstractStep>> b_successors(const PtpnNet& net, const BudgetConfig& b) {
  std::vector<std::pair<BudgetConfig, AbstractStep>> out;
  long z = storage_rate(net, b.a);
  if (b.budget < z) return out;
  for (int kind : {3, 4})
    for (auto& [next, step] : timed_successors(b.a, kind, net.cmax()))
      out.push_back({{std::move(next), b.budget - z}, step});
  return out;
}

std::vector<std::pair<BudgetConfig, AbstractStep>> budget_successors(const PtpnNet& net, long v,
                                                                     const BudgetConfig& b) {
  if (b.budget < 0 || b.budget > v) throw Error("budget outside [0, v]");
  auto out = a_successors(net, b);
  auto more = b_successors(net, b);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

bool allowed_place(const PtpnNet& net, OrderKind kind, int place) {
  switch (kind) {
    case OrderKind::f:
      return !net.is_cost_place(place);
    case OrderKind::c:
      return net.is_cost_place(place);
    case OrderKind::fc:
      return true;
  }
  return false;
}

bool only_allowed(const PtpnNet& net, OrderKind kind, const Group& g) {
  for (const auto& t : g)
    if (!allowed_place(net, kind, t.place)) return false;
  return true;
}

long cost_token_count(const PtpnNet& net, const AbstractConfig& a) {
  long n = 0;
  auto count = [&](const Group& g) {
    for (const auto& t : g) n += net.is_cost_place(t.place);
  };
  for (const auto& g : a.high) count(g);
  count(a.center);
  for (const auto& g : a.low) count(g);
  return n;
}

namespace {

bool fits(const PtpnNet& net, OrderKind kind, const Group& small, const Group& big) {
  return group_includes(big, small) && only_allowed(net, kind, group_minus(big, small));
}

// Lexicographically least strictly monotone embedding of the word b into c, where every
// skipped group of c consists of allowed tokens only.
std::optional<std::vector<int>> embed(const PtpnNet& net, OrderKind kind, const std::vector<Group>& b,
                                      const std::vector<Group>& c) {
  size_t m = b.size(), n = c.size();
  // ok[i][j]: b[i..] embeds into c[j..]
  std::vector<std::vector<char>> ok(m + 1, std::vector<char>(n + 1, 0));
  ok[m][n] = 1;
  for (size_t j = n; j-- > 0;) ok[m][j] = ok[m][j + 1] && only_allowed(net, kind, c[j]);
  for (size_t i = m; i-- > 0;)
    for (size_t j = n; j-- > 0;) {
      if (fits(net, kind, b[i], c[j]) && ok[i + 1][j + 1])
        ok[i][j] = 1;
      else if (only_allowed(net, kind, c[j]) && ok[i][j + 1])
        ok[i][j] = 1;
    }
  if (!ok[0][0]) return std::nullopt;
  std::vector<int> f;
  size_t j = 0;
  for (size_t i = 0; i < m; ++i) {
    while (!(fits(net, kind, b[i], c[j]) && ok[i + 1][j + 1])) ++j;
    f.push_back(int(j++));
  }
  return f;
}

void check_map(const std::vector<int>& f, size_t small, size_t big) {
  if (f.size() != small) throw Error("injection has the wrong domain");
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0 || size_t(f[i]) >= big) throw Error("injection out of range");
    if (i > 0 && f[i] <= f[i - 1]) throw Error("injection is not strictly monotone");
  }
}

std::vector<Group> residual_word(const PtpnNet& net, OrderKind kind, const std::vector<Group>& b,
                                 const std::vector<Group>& c, const std::vector<int>& f) {
  check_map(f, b.size(), c.size());
  std::vector<Group> r = c;
  for (size_t i = 0; i < f.size(); ++i) {
    if (!group_includes(c[f[i]], b[i])) throw Error("group not included in its image");
    r[f[i]] = group_minus(c[f[i]], b[i]);
  }
  for (const auto& g : r)
    if (!only_allowed(net, kind, g)) throw Error("residual contains tokens on places outside the order's place set");
  return r;
}

std::vector<Group> add_word(const std::vector<Group>& residual, const std::vector<Group>& b, const std::vector<int>& f) {
  check_map(f, b.size(), residual.size());
  std::vector<Group> out = residual;
  for (size_t i = 0; i < f.size(); ++i) out[f[i]] = merged(out[f[i]], b[i]);
  for (const auto& g : out)
    if (g.empty()) throw Error("residual leaves an empty group");
  return out;
}

}  // namespace

std::optional<OrderWitness> leq_witness(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta,
                                        const BudgetConfig& gamma) {
  if (beta.a.state != gamma.a.state || beta.budget != gamma.budget) return std::nullopt;
  if (!fits(net, kind, beta.a.center, gamma.a.center)) return std::nullopt;
  auto high = embed(net, kind, beta.a.high, gamma.a.high);
  if (!high) return std::nullopt;
  auto low = embed(net, kind, beta.a.low, gamma.a.low);
  if (!low) return std::nullopt;
  return decompose_oplus(net, kind, beta, gamma, {*high, *low});
}

bool leq(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta, const BudgetConfig& gamma) {
  return leq_witness(net, kind, beta, gamma).has_value();
}

OrderWitness decompose_oplus(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta, const BudgetConfig& gamma,
                             const Injection& f) {
  if (beta.a.state != gamma.a.state || beta.budget != gamma.budget) throw Error("control states differ");
  OrderWitness w;
  w.kind = kind;
  w.f = f;
  w.residual.state = gamma.a.state;
  w.residual.high = residual_word(net, kind, beta.a.high, gamma.a.high, f.high);
  w.residual.low = residual_word(net, kind, beta.a.low, gamma.a.low, f.low);
  if (!group_includes(gamma.a.center, beta.a.center)) throw Error("center not included");
  w.residual.center = group_minus(gamma.a.center, beta.a.center);
  if (!only_allowed(net, kind, w.residual.center)) throw Error("residual center outside the order's place set");
  return w;
}

BudgetConfig oplus(const OrderWitness& alpha, const BudgetConfig& beta) {
  BudgetConfig g;
  g.budget = beta.budget;
  g.a.state = beta.a.state;
  g.a.high = add_word(alpha.residual.high, beta.a.high, alpha.f.high);
  g.a.low = add_word(alpha.residual.low, beta.a.low, alpha.f.low);
  g.a.center = merged(alpha.residual.center, beta.a.center);
  return g;
}

}  // namespace ptpn
