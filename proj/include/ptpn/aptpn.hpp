#pragma once

#include "ptpn/core.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace ptpn {

struct AgedToken {
  int place = 0;
  int age = 0;
  auto operator<=>(const AgedToken&) const = default;
};

using Group = std::vector<AgedToken>;  // sorted multiset

void normalize(Group& g);
Group merged(const Group& a, const Group& b);
bool group_includes(const Group& big, const Group& small);
Group group_minus(const Group& big, const Group& small);
Group aged_plus(const Group& g, int cmax);  // b+ : ages +1, capped at cmax+1

struct AbstractConfig {
  int state = 0;
  std::vector<Group> high;  // b_{-m} .. b_{-1}
  Group center;             // b_0
  std::vector<Group> low;   // b_1 .. b_n
  auto operator<=>(const AbstractConfig&) const = default;

  size_t token_count() const;
};

enum class Region { high, center, low };

struct TokenRef {
  Region region = Region::center;
  int group = 0;  // index into high or low; ignored for center
  AgedToken token;
  bool operator==(const TokenRef&) const = default;
};

struct DiscreteWitness {
  int transition = 0;
  std::vector<TokenRef> in, read;  // positions in the source configuration
  std::vector<TokenRef> out;       // positions in the resulting configuration
  std::vector<int> high_map;       // source high group -> result high group, -1 if consumed entirely
  std::vector<int> low_map;
};

enum class StepKind { discrete, type1, type2, type3, type4 };

struct AbstractStep {
  StepKind kind = StepKind::type1;
  int k = 0;  // parameter of type 3 / type 4
  DiscreteWitness disc;
};

std::string to_string(const AbstractStep& s, const PtpnNet& net);

struct AbstractTrace {
  std::vector<AbstractConfig> configs;  // configs.size() == steps.size() + 1
  std::vector<AbstractStep> steps;
};

// Encoding of a configuration in 2/5-form.
AbstractConfig encode(const PtpnNet& net, const ConcreteConfig& c);

std::vector<std::pair<AbstractConfig, AbstractStep>> discrete_successors(const PtpnNet& net, const AbstractConfig& a,
                                                                          int transition);
std::vector<std::pair<AbstractConfig, AbstractStep>> discrete_successors(const PtpnNet& net, const AbstractConfig& a);

// kind in 1..4; type 3 / 4 return one successor per admissible k.
std::vector<std::pair<AbstractConfig, AbstractStep>> timed_successors(const AbstractConfig& a, int kind, int cmax);

AbstractConfig apply_timed(const AbstractConfig& a, StepKind kind, int k, int cmax);

long abstract_step_cost(const PtpnNet& net, const AbstractConfig& a, const AbstractStep& step);
long storage_rate(const PtpnNet& net, const AbstractConfig& a);  // sum of place costs over all tokens

struct Realization {
  Trace trace;
  std::vector<ConcreteConfig> configs;
};

Realization realize(const PtpnNet& net, const AbstractTrace& at, const Rational& delta);

std::string to_string(const Group& g, const PtpnNet& net);
std::string to_string(const AbstractConfig& a, const PtpnNet& net);

}  // namespace ptpn
