#pragma once

#include "ptpn/acptpn.hpp"
#include "ptpn/encoder.hpp"
#include "ptpn/sdtn.hpp"
#include "ptpn/wqo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptpn {

struct SolverBudgets {
  size_t max_states = 1000000;  // per search or oracle call
  int bound = 12;               // token bound of the generated nets
  size_t phase_iters = 50;
  long vmax = 64;
  int jobs = 1;
  size_t max_basis = 4000;  // elements kept by a backward saturation
  bool forward_first = true;  // try a forward witness search before the phase construction
};

struct ThresholdInstance {
  PtpnNet net;
  int q_init = 0;
  int q_fin = 0;
  long v = 0;
  Marking init;  // initial marking, empty by default
};

// A run of the budgeted abstract net: configs.size() == steps.size() + 1.
struct BudgetTrace {
  std::vector<BudgetConfig> configs;
  std::vector<AbstractStep> steps;
};

// Every step is a budget step of the net and the run ends in q_fin.
bool replays(const PtpnNet& net, long v, const BudgetTrace& t, int q_fin);

struct SolveDiagnostics {
  Verdict forward = Verdict::unknown;  // forward search over budget steps
  Verdict phase = Verdict::unknown;    // phase construction
  size_t explored = 0;
  size_t oracle_calls = 0;
  size_t phases = 0;
  size_t saturation_rounds = 0;
  std::vector<size_t> chain_sizes;
  bool consistent = true;  // false when the phase construction contradicts a concrete witness
  std::string note;
};

struct SolveResult {
  Verdict answer = Verdict::unknown;
  std::optional<BudgetTrace> witness;
  SolveDiagnostics diag;
};

SolveResult cost_threshold(const ThresholdInstance& in, const SolverBudgets& budgets);

struct OptimalResult {
  enum class Kind { finite, infinity, unknown } kind = Kind::unknown;
  long value = 0;
  std::optional<BudgetTrace> witness;
  std::vector<Verdict> scan;  // threshold verdicts for v = 0, 1, ...
  std::string note;
};

std::string to_string(const OptimalResult& r);

OptimalResult cost_optimal(const PtpnNet& net, int q_init, int q_fin, const SolverBudgets& budgets,
                           const Marking& init = {});

// Lower-bound translations; the resulting threshold is 0.
ThresholdInstance translate_inhibitor_to_ptpn(const InhibitorNet& net, const NetConfig& init, const NetConfig& final);
ThresholdInstance translate_tpn_to_ptpn(const PtpnNet& tpn, int q_init, int q_fin);

// ---- building blocks, exposed for testing ----

// Minimal (for the full order) predecessors of up({x}) under discrete and type 1/2 steps.
std::vector<BudgetConfig> min_pre_a(const PtpnNet& net, long v, const BudgetConfig& x);
// Minimal (for the free order) predecessors of up({x}) under type 3/4 steps.
std::vector<BudgetConfig> min_pre_b(const PtpnNet& net, long v, const BudgetConfig& x);
// Basis for the full order of Pre*_A(up(basis)).
BasisResult<BudgetConfig> saturate_pre_a(const PtpnNet& net, long v, const std::vector<BudgetConfig>& basis,
                                         size_t max_basis);
// Basis for the free order of up_fc({k}) restricted to at most v cost tokens.
std::vector<BudgetConfig> restrict_to_cost_bound(const PtpnNet& net, long v, const BudgetConfig& k);
// Antichain of minimal elements for the given order.
std::vector<BudgetConfig> minimal_elements(const PtpnNet& net, OrderKind kind, std::vector<BudgetConfig> xs);

struct ForwardResult {
  Verdict verdict = Verdict::unknown;
  std::optional<BudgetTrace> trace;
  size_t explored = 0;
  bool truncated = false;  // some successor had more than `bound` tokens
};

// Breadth-first search over budget steps from `init` to control state q_fin.
ForwardResult forward_search(const PtpnNet& net, long v, const BudgetConfig& init, int q_fin, size_t max_states,
                             int bound = 12);

}  // namespace ptpn
