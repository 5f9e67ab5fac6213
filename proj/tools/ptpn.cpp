#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "ptpn/io.hpp"
#include "ptpn/polytope.hpp"
#include "ptpn/solver.hpp"

using namespace ptpn;
using json = nlohmann::json;

namespace {

constexpr int kUsage = 64;
constexpr int kData = 65;
constexpr int kNoInput = 66;

struct UsageError : Error {
  using Error::Error;
};

struct NoInput : Error {
  using Error::Error;
};

struct Options {
  int bound = 12;
  size_t state_budget = 1000000;
  size_t phase_iters = 50;
  long vmax = 64;
  int jobs = 1;
  std::string format = "human";
  bool machine() const { return format == "machine"; }
  SolverBudgets budgets() const {
    SolverBudgets b;
    b.bound = bound;
    b.max_states = state_budget;
    b.phase_iters = phase_iters;
    b.vmax = vmax;
    b.jobs = jobs;
    return b;
  }
};

std::string load(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw NoInput("cannot open '" + path + "'");
  return read_file(path);
}

int exit_code(Verdict v) { return v == Verdict::yes ? 0 : v == Verdict::no ? 1 : 2; }

std::string decimal(const Rational& q) {
  std::ostringstream o;
  o << std::setprecision(12) << q.get_d();
  return o.str();
}

json group_json(const Group& g, const PtpnNet& net) {
  json out = json::array();
  for (const auto& t : g) out.push_back({net.places[t.place], t.age});
  return out;
}

json abstract_json(const AbstractConfig& a, const PtpnNet& net) {
  json high = json::array(), low = json::array();
  for (const auto& g : a.high) high.push_back(group_json(g, net));
  for (const auto& g : a.low) low.push_back(group_json(g, net));
  return {{"state", net.states[a.state]}, {"high", high}, {"center", group_json(a.center, net)}, {"low", low}};
}

PtpnNet ptpn_of(const NetDocument& doc) {
  if (doc.kind != NetKind::ptpn) throw UsageError("expected a ptpn net, got " + to_string(doc.kind));
  return doc.ptpn;
}

// ---- simulate ----

int simulate(const Options& o, const std::string& net_path, const std::string& trace_path,
             const std::optional<std::string>& budget, const std::string& slack) {
  PtpnNet net = ptpn_of(parse_net(load(net_path)));
  TraceDocument doc = parse_trace(load(trace_path), net);
  auto configs = replay(net, doc.trace);
  Rational cost = trace_cost(net, doc.trace);
  bool declared_ok = !doc.declared_cost || *doc.declared_cost == cost;
  std::optional<bool> within;
  if (budget) within = cost <= parse_rational(*budget) + parse_rational(slack);
  if (o.machine()) {
    std::string final = print_config(net, configs.back());
    final = final.substr(7, final.size() - 8);  // without "config " and the newline
    json j = {{"cost", to_string(cost)}, {"steps", doc.trace.steps.size()}, {"final", final}};
    if (doc.declared_cost) j["declared_cost"] = to_string(*doc.declared_cost);
    j["declared_cost_matches"] = declared_ok;
    if (within) j["within_budget"] = *within;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "cost = " << to_string(cost) << "\n";
    if (!declared_ok) std::cout << "declared cost " << to_string(*doc.declared_cost) << " does not match\n";
    if (within) std::cout << (*within ? "within" : "exceeds") << " budget " << *budget << " + " << slack << "\n";
  }
  return declared_ok && within.value_or(true) ? 0 : 1;
}

// ---- encode-aptpn / step-abstract ----

int encode_aptpn(const Options& o, const std::string& net_path, const std::string& config_path) {
  PtpnNet net = ptpn_of(parse_net(load(net_path)));
  ConcreteConfig c = parse_config(load(config_path), net);
  AbstractConfig a = encode(net, c);
  if (o.machine()) std::cout << abstract_json(a, net).dump() << "\n";
  else std::cout << to_string(a, net) << "\n";
  return 0;
}

AbstractConfig abstract_input(const PtpnNet& net, const std::string& text) {
  std::istringstream in(text);
  std::string first;
  in >> first;
  if (first == "config") return encode(net, parse_config(text, net));
  return parse_abstract(text, net);
}

int step_abstract(const Options& o, const std::string& net_path, const std::string& config_path,
                  const std::string& kind) {
  PtpnNet net = ptpn_of(parse_net(load(net_path)));
  AbstractConfig a = abstract_input(net, load(config_path));
  std::vector<std::pair<AbstractConfig, AbstractStep>> out;
  auto add = [&](std::vector<std::pair<AbstractConfig, AbstractStep>> xs) { out.insert(out.end(), xs.begin(), xs.end()); };
  if (kind == "discrete" || kind == "all") add(discrete_successors(net, a));
  for (int k = 1; k <= 4; ++k)
    if (kind == "type" + std::to_string(k) || kind == "all") add(timed_successors(a, k, net.cmax()));
  if (o.machine()) {
    json arr = json::array();
    for (const auto& [b, s] : out)
      arr.push_back({{"step", to_string(s, net)}, {"cost", abstract_step_cost(net, a, s)}, {"config", abstract_json(b, net)}});
    std::cout << arr.dump() << "\n";
  } else {
    for (const auto& [b, s] : out) std::cout << to_string(s, net) << ": " << to_string(b, net) << "\n";
  }
  return 0;
}

// ---- solving ----

struct Endpoints {
  int q_init = 0;
  int q_fin = 0;
  Marking init;
};

Endpoints endpoints(const NetDocument& doc, const std::optional<std::string>& from, const std::optional<std::string>& to) {
  Endpoints e;
  if (doc.init) {
    e.q_init = doc.init->state;
    e.init = doc.init->marking;
  }
  if (from) e.q_init = doc.ptpn.state_index(*from);
  if (to) e.q_fin = doc.ptpn.state_index(*to);
  else if (doc.final_state) e.q_fin = *doc.final_state;
  else throw UsageError("no target state: give --to or a final line");
  return e;
}

// A concrete trace for an abstract run; its cost exceeds the abstract cost by at most 1/100.
std::optional<Trace> concrete_witness(const PtpnNet& net, const BudgetTrace& bt, std::string& note) {
  AbstractTrace at;
  for (const auto& c : bt.configs) at.configs.push_back(c.a);
  at.steps = bt.steps;
  size_t tokens = 1;
  for (const auto& c : at.configs) tokens = std::max(tokens, c.token_count());
  long scale = std::max<long>(1, long(at.steps.size()) * long(tokens) * std::max<long>(1, net.max_place_cost()));
  Rational delta = std::min(Rational(1, 5), Rational(1, 100 * scale));
  try {
    return realize(net, at, delta).trace;
  } catch (const Error& e) {
    note = e.what();
    return std::nullopt;
  }
}

json diag_json(const SolveDiagnostics& d) {
  return {{"forward", to_string(d.forward)}, {"phase", to_string(d.phase)},      {"explored", d.explored},
          {"oracle_calls", d.oracle_calls},  {"phases", d.phases},               {"chain_sizes", d.chain_sizes},
          {"consistent", d.consistent},      {"note", d.note}};
}

// Writes the witness file when asked; returns the json record.
json emit_witness(const PtpnNet& net, const std::optional<BudgetTrace>& bt, const std::optional<std::string>& path,
                  std::ostream& human, bool machine) {
  json j;
  if (!bt) return j;
  std::string note;
  auto trace = concrete_witness(net, *bt, note);
  j["abstract_steps"] = bt->steps.size();
  if (!trace) {
    j["note"] = note;
    if (!machine) human << "no concrete witness: " << note << "\n";
    return j;
  }
  Rational cost = trace_cost(net, *trace);
  j["cost"] = to_string(cost);
  if (path) {
    std::ofstream out(*path);
    if (!out) throw NoInput("cannot write '" + *path + "'");
    out << print_trace(net, *trace);
    j["file"] = *path;
  }
  if (!machine) {
    human << "witness: " << trace->steps.size() << " steps, cost " << to_string(cost) << " (" << decimal(cost) << ")";
    if (path) human << ", written to " << *path;
    human << "\n";
  }
  return j;
}

int solve_threshold(const Options& o, const std::string& net_path, long v, const std::optional<std::string>& from,
                    const std::optional<std::string>& to, const std::optional<std::string>& witness) {
  NetDocument doc = parse_net(load(net_path));
  PtpnNet net = ptpn_of(doc);
  Endpoints e = endpoints(doc, from, to);
  SolveResult r = cost_threshold({net, e.q_init, e.q_fin, v, e.init}, o.budgets());
  if (!o.machine()) {
    std::cout << "answer: " << to_string(r.answer) << "\n";
    std::cout << "forward search: " << to_string(r.diag.forward) << ", phase construction: " << to_string(r.diag.phase)
              << ", explored " << r.diag.explored << ", oracle calls " << r.diag.oracle_calls << "\n";
    if (!r.diag.note.empty()) std::cout << "note: " << r.diag.note << "\n";
  }
  json w = emit_witness(net, r.answer == Verdict::yes ? r.witness : std::nullopt, witness, std::cout, o.machine());
  if (o.machine()) {
    json j = {{"answer", to_string(r.answer)}, {"v", v}, {"diagnostics", diag_json(r.diag)}};
    if (!w.is_null()) j["witness"] = w;
    std::cout << j.dump() << "\n";
  }
  return exit_code(r.answer);
}

int solve_optimal(const Options& o, const std::string& net_path, const std::optional<std::string>& from,
                  const std::optional<std::string>& to, const std::optional<std::string>& witness) {
  NetDocument doc = parse_net(load(net_path));
  PtpnNet net = ptpn_of(doc);
  Endpoints e = endpoints(doc, from, to);
  OptimalResult r = cost_optimal(net, e.q_init, e.q_fin, o.budgets(), e.init);
  if (!o.machine()) {
    std::cout << "optimal cost: " << to_string(r) << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  }
  json w = emit_witness(net, r.witness, witness, std::cout, o.machine());
  if (o.machine()) {
    json scan = json::array();
    for (auto v : r.scan) scan.push_back(to_string(v));
    json j = {{"optimal", to_string(r)}, {"scan", scan}, {"note", r.note}};
    if (!w.is_null()) j["witness"] = w;
    std::cout << j.dump() << "\n";
  }
  switch (r.kind) {
    case OptimalResult::Kind::finite: return 0;
    case OptimalResult::Kind::infinity: return 1;
    case OptimalResult::Kind::unknown: return 2;
  }
  return 2;
}

// ---- translate ----

int translate(const Options& o, const std::string& net_path, const std::string& target) {
  NetDocument doc = parse_net(load(net_path));
  NetDocument out;
  auto need = [&](const auto& x, const char* what) {
    if (!x) throw UsageError(std::string("the net needs ") + what + " line for this translation");
    return *x;
  };
  if (doc.kind == NetKind::sdtn && target == "inhibitor") {
    auto r = sdtn_to_inhibitor({doc.sdtn, need(doc.net_init, "an init"), need(doc.net_final, "a final")});
    out.kind = NetKind::inhibitor;
    out.inhibitor = r.net;
    out.net_init = r.init;
    out.net_final = r.final;
  } else if (doc.kind == NetKind::inhibitor && target == "sdtn") {
    auto r = inhibitor_to_sdtn({doc.inhibitor, need(doc.net_init, "an init"), need(doc.net_final, "a final")});
    out.kind = NetKind::sdtn;
    out.sdtn = r.net;
    out.net_init = r.init;
    out.net_final = r.final;
  } else if (doc.kind == NetKind::inhibitor && target == "ptpn") {
    auto r = translate_inhibitor_to_ptpn(doc.inhibitor, need(doc.net_init, "an init"), need(doc.net_final, "a final"));
    out.ptpn = r.net;
    out.init = ConcreteConfig{r.q_init, {}};
    out.final_state = r.q_fin;
  } else if (doc.kind == NetKind::ptpn && target == "ptpn") {
    auto r = translate_tpn_to_ptpn(doc.ptpn, doc.init ? doc.init->state : 0, doc.final_state.value_or(0));
    out.ptpn = r.net;
    out.init = doc.init;
    out.final_state = doc.final_state;
  } else {
    throw UsageError("no translation from " + to_string(doc.kind) + " to " + target);
  }
  if (o.machine()) std::cout << json({{"kind", to_string(out.kind)}, {"net", print(out)}}).dump() << "\n";
  else std::cout << print(out);
  return 0;
}

// ---- check-matrix ----

int check_matrix(const Options& o, const std::string& net_path, const std::string& trace_path, int cap) {
  PtpnNet net = ptpn_of(parse_net(load(net_path)));
  TraceDocument doc = parse_trace(load(trace_path), net);
  TraceSkeleton sk = build_skeleton(net, doc.trace);
  ConstraintSystem sys = build_constraints(sk);
  bool shape = is_ptpn_constraint_matrix(sys.matrix, sys.m, sys.n);
  bool point = sys.satisfied_by(sk.point);
  // the exhaustive checks are exponential; they are skipped beyond the cap
  int rows = int(sys.matrix.size()), cols = sys.m + sys.n;
  std::optional<bool> tu, integral;
  std::vector<std::vector<Rational>> vs;
  if (rows <= cap && cols <= cap) tu = is_totally_unimodular(sys.matrix, cap);
  if (cols <= cap) {
    vs = vertices(sys, cap);
    integral = true;
    for (const auto& v : vs)
      for (const auto& x : v) integral = *integral && x.get_den() == 1;
  }
  bool ok = shape && point && tu.value_or(true) && integral.value_or(true);
  if (o.machine()) {
    json rows = json::array();
    for (size_t i = 0; i < sys.matrix.size(); ++i)
      rows.push_back({{"row", sys.matrix[i]}, {"rhs", sys.rhs[i]}, {"strict", bool(sys.strict[i])}});
    std::cout << json({{"m", sys.m},
                       {"n", sys.n},
                       {"rows", rows},
                       {"shape", shape},
                       {"totally_unimodular", tu ? json(*tu) : json(nullptr)},
                       {"trace_point_satisfies", point},
                       {"vertices", integral ? json(vs.size()) : json(nullptr)},
                       {"vertices_integral", integral ? json(*integral) : json(nullptr)}})
                     .dump()
              << "\n";
  } else {
    std::cout << "variables: " << sys.m << " ages, " << sys.n << " delays\n";
    for (size_t i = 0; i < sys.matrix.size(); ++i) {
      for (long x : sys.matrix[i]) std::cout << (x >= 0 ? "  " : " ") << x;
      std::cout << (sys.strict[i] ? "  < " : " <= ") << sys.rhs[i] << "\n";
    }
    std::cout << "constraint shape: " << (shape ? "ok" : "violated") << "\n";
    std::string skipped = "not checked, larger than --cap " + std::to_string(cap);
    std::cout << "totally unimodular: " << (tu ? (*tu ? "yes" : "no") : skipped) << "\n";
    std::cout << "trace satisfies the system: " << (point ? "yes" : "no") << "\n";
    if (integral) std::cout << "vertices: " << vs.size() << (*integral ? ", all integral" : ", some fractional") << "\n";
    else std::cout << "vertices: " << skipped << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Priced timed Petri net toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--bound", o.bound, "Token bound of generated nets and searches")->check(CLI::PositiveNumber);
  app.add_option("--state-budget", o.state_budget, "States per search or oracle call")->check(CLI::PositiveNumber);
  app.add_option("--phase-iters", o.phase_iters, "Phases of the backward construction");
  app.add_option("--vmax", o.vmax, "Largest threshold tried by solve-optimal")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", o.jobs, "Search threads")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "machine"}));

  std::string net, trace, config, kind = "all", target, slack = "0";
  std::optional<std::string> budget, from, to, witness;
  long v = 0;
  int cap = 8;

  auto* sim = app.add_subcommand("simulate", "Replay a trace and print its cost");
  sim->add_option("net", net)->required();
  sim->add_option("trace", trace)->required();
  sim->add_option("--budget", budget, "Fail unless the cost is at most this");
  sim->add_option("--slack", slack, "Added to --budget");

  auto* enc = app.add_subcommand("encode-aptpn", "Abstract encoding of a configuration");
  enc->add_option("net", net)->required();
  enc->add_option("config", config)->required();

  auto* step = app.add_subcommand("step-abstract", "Successors of an abstract configuration");
  step->add_option("net", net)->required();
  step->add_option("config", config, "A 'config' line or an abstract configuration")->required();
  step->add_option("--kind", kind)->check(CLI::IsMember({"all", "discrete", "type1", "type2", "type3", "type4"}));

  auto* thr = app.add_subcommand("solve-threshold", "Can the target be reached with cost at most v");
  thr->add_option("net", net)->required();
  thr->add_option("--v", v, "Cost threshold")->required()->check(CLI::NonNegativeNumber);
  auto* opt = app.add_subcommand("solve-optimal", "Least integer threshold that succeeds");
  opt->add_option("net", net)->required();
  for (auto* sc : {thr, opt}) {
    sc->add_option("--from", from, "Initial control state (default: the init line)");
    sc->add_option("--to", to, "Target control state (default: the final line)");
    sc->add_option("--witness", witness, "Write a concrete witness trace here");
  }

  auto* tr = app.add_subcommand("translate", "Translate between net kinds");
  tr->add_option("net", net)->required();
  tr->add_option("--to", target)->required()->check(CLI::IsMember({"sdtn", "inhibitor", "ptpn"}));

  auto* chk = app.add_subcommand("check-matrix", "Constraint system of a trace");
  chk->add_option("net", net)->required();
  chk->add_option("trace", trace)->required();
  chk->add_option("--cap", cap, "Largest minor size checked exhaustively");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sim) return simulate(o, net, trace, budget, slack);
    if (*enc) return encode_aptpn(o, net, config);
    if (*step) return step_abstract(o, net, config, kind);
    if (*thr) return solve_threshold(o, net, v, from, to, witness);
    if (*opt) return solve_optimal(o, net, from, to, witness);
    if (*tr) return translate(o, net, target);
    if (*chk) return check_matrix(o, net, trace, cap);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
