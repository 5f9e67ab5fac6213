#pragma once

#include "ptpn/aptpn.hpp"
#include "ptpn/core.hpp"
#include "ptpn/sdtn.hpp"

#include <optional>
#include <string>

namespace ptpn {

class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

enum class NetKind { ptpn, sdtn, inhibitor };

std::string to_string(NetKind k);

// One of the three net kinds plus optional initial and final configurations.
struct NetDocument {
  NetKind kind = NetKind::ptpn;
  PtpnNet ptpn;
  SdtnNet sdtn;
  InhibitorNet inhibitor;
  std::optional<ConcreteConfig> init;  // ptpn
  std::optional<int> final_state;      // ptpn
  std::optional<NetConfig> net_init;   // sdtn / inhibitor
  std::optional<NetConfig> net_final;  // sdtn / inhibitor
};

// Line format, '#' starts a comment:
//   net ptpn|sdtn|inhibitor
//   states q1 q2
//   places p1:3 p2:0                 (costs only for ptpn, default 0)
//   transition t q1 -> q2 cost 1 : (p1, (0,3], in) (p2, [1,5), out) (p3, [2,2], read)
//   transition t q1 -> q2 : in p1 p1 out - transfer      (sdtn / inhibitor)
//   transfer p1 -> p2                (sdtn)
//   inhibitor p1 t                   (inhibitor)
//   init q1 : p1@3 p1@5/2            (ptpn tokens; names only for sdtn / inhibitor; '-' when empty)
//   final q2                         (ptpn)  /  final q2 : p1 -   (sdtn / inhibitor)
NetDocument parse_net(const std::string& text);
std::string print(const NetDocument& doc);

struct TraceDocument {
  Trace trace;
  std::optional<Rational> declared_cost;
};

//   trace
//   init q1 : p1@31/10 p2@13/2
//   fire t1 in p1@5/2 read - out p2@13/10 p3@11/5
//   delay 7/10
//   cost 279/10
TraceDocument parse_trace(const std::string& text, const PtpnNet& net);
// Always ends with the recomputed cost line.
std::string print_trace(const PtpnNet& net, const Trace& trace);

// "config q1 : p1@21/10 p1@1 ..."
ConcreteConfig parse_config(const std::string& text, const PtpnNet& net);
std::string print_config(const PtpnNet& net, const ConcreteConfig& c);

// The printed form of an abstract configuration: "q1 <[(p1,2),(p2,6)] [..] | [..] | [..]>".
AbstractConfig parse_abstract(const std::string& text, const PtpnNet& net);

Interval parse_interval(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace ptpn
