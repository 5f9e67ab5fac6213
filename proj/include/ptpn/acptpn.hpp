#pragma once

#include "ptpn/aptpn.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ptpn {

// An abstract configuration together with the remaining allowed cost.
struct BudgetConfig {
  AbstractConfig a;
  long budget = 0;
  auto operator<=>(const BudgetConfig&) const = default;
};

std::string to_string(const BudgetConfig& b, const PtpnNet& net);

BudgetConfig lift(long v, const AbstractConfig& a, long y);

std::vector<std::pair<BudgetConfig, AbstractStep>> budget_successors(const PtpnNet& net, long v, const BudgetConfig& b);

// Steps that keep the budget: discrete steps and timed steps of types 1 and 2.
std::vector<std::pair<BudgetConfig, AbstractStep>> a_successors(const PtpnNet& net, const BudgetConfig& b);
// Timed steps of types 3 and 4.
std::vector<std::pair<BudgetConfig, AbstractStep>> b_successors(const PtpnNet& net, const BudgetConfig& b);

// Which places may receive extra tokens: free places, cost places, or all places.
enum class OrderKind { f, c, fc };

bool allowed_place(const PtpnNet& net, OrderKind kind, int place);
bool only_allowed(const PtpnNet& net, OrderKind kind, const Group& g);

// Strictly monotone alignment of the smaller configuration's groups into the larger one.
// Centers are always aligned with each other.
struct Injection {
  std::vector<int> high;  // high group i of the smaller config -> high group of the larger
  std::vector<int> low;
  bool operator==(const Injection&) const = default;
};

// The added tokens, laid out on the larger configuration's groups (groups may be empty).
struct OrderWitness {
  OrderKind kind = OrderKind::f;
  Injection f;
  AbstractConfig residual;
};

std::optional<OrderWitness> leq_witness(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta,
                                        const BudgetConfig& gamma);
bool leq(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta, const BudgetConfig& gamma);

// Checks an alignment and computes the residual; throws when the alignment does not witness beta <= gamma.
OrderWitness decompose_oplus(const PtpnNet& net, OrderKind kind, const BudgetConfig& beta, const BudgetConfig& gamma,
                             const Injection& f);

// Adds the residual tokens of the witness to beta. Residual groups that are not targets of the
// injection become new groups.
BudgetConfig oplus(const OrderWitness& alpha, const BudgetConfig& beta);

long cost_token_count(const PtpnNet& net, const AbstractConfig& a);

}  // namespace ptpn
