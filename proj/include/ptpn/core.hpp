#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ptpn {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);   // "a", "a/b" or "a.b"
std::string to_string(const Rational& q);           // "num/den", or "num" when den = 1
long floor_of(const Rational& q);
Rational frac_of(const Rational& q);

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  long lo = 0;
  long hi = 0;
  bool hi_inf = false;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval make(long lo, bool lo_closed, long hi, bool hi_closed);
  static Interval from(long lo, bool lo_closed);  // [lo, inf) or (lo, inf)

  bool contains(const Rational& age) const;
  bool contains(long age) const;
  // k |= I: every age strictly between k and k+1 lies in I
  bool models(long k) const;
  long max_finite() const { return hi_inf ? lo : hi; }
  bool operator==(const Interval&) const = default;
};

std::string to_string(const Interval& iv);

struct Arc {
  int place = 0;
  Interval iv;
  bool operator==(const Arc&) const = default;
};

struct Transition {
  std::string name;
  int from = 0;
  int to = 0;
  std::vector<Arc> in, read, out;
  long cost = 0;
};

struct PtpnNet {
  std::vector<std::string> states;
  std::vector<std::string> places;
  std::vector<long> place_cost;
  std::vector<Transition> transitions;

  int state_index(const std::string& name) const;
  int place_index(const std::string& name) const;
  int transition_index(const std::string& name) const;
  int cmax() const;
  bool is_cost_place(int p) const { return place_cost[p] > 0; }
  long max_place_cost() const;
  void validate() const;
};

struct Token {
  int place = 0;
  Rational age;
  bool operator==(const Token& o) const { return place == o.place && age == o.age; }
  bool operator<(const Token& o) const { return place != o.place ? place < o.place : age < o.age; }
};

using Marking = std::vector<Token>;  // kept sorted

void normalize(Marking& m);
bool includes(const Marking& big, const Marking& small);
Marking minus(const Marking& big, const Marking& small);
Marking plus(const Marking& a, const Marking& b);

struct ConcreteConfig {
  int state = 0;
  Marking marking;
  bool operator==(const ConcreteConfig&) const = default;
};

struct TimedStep {
  Rational delay;
};

struct DiscreteStep {
  int transition = 0;
  Marking in, read, out;
};

using ConcreteStep = std::variant<TimedStep, DiscreteStep>;

struct Trace {
  ConcreteConfig init;
  std::vector<ConcreteStep> steps;
};

// A place-preserving bijection pairing tokens with arcs; result[i] is the arc of token i.
std::optional<std::vector<int>> match(const Marking& tokens, const std::vector<Arc>& arcs);

bool enabled(const PtpnNet& net, const ConcreteConfig& c, int transition);
ConcreteConfig fire(const PtpnNet& net, const ConcreteConfig& c, const ConcreteStep& step);
Rational step_cost(const PtpnNet& net, const ConcreteConfig& c, const ConcreteStep& step);
Rational trace_cost(const PtpnNet& net, const Trace& trace);
std::vector<ConcreteConfig> replay(const PtpnNet& net, const Trace& trace);

Marking delayed(const Marking& m, const Rational& x);

struct Decomposition {
  std::vector<Marking> high;  // M_{-m} .. M_{-1}
  Marking center;             // M_0
  std::vector<Marking> low;   // M_1 .. M_n
};

Decomposition decompose(const Marking& m);

bool is_delta_form(const Marking& m, const Rational& delta);
bool is_delta_form(const PtpnNet& net, const Trace& trace, const Rational& delta);
bool is_detailed(const ConcreteConfig& c, const Rational& delay);
Trace refine_to_detailed(const PtpnNet& net, const Trace& trace);

// Candidate discrete firings. Output ages are integers and k + f for every f in palette,
// restricted to each output interval and to integer parts up to cmax + 1.
std::vector<DiscreteStep> enumerate_firings(const PtpnNet& net, const ConcreteConfig& c, int transition,
                                            const std::vector<Rational>& palette);

}  // namespace ptpn
