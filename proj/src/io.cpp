#include "ptpn/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ptpn {

namespace {

bool name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && std::string("(),:[]@<>|#").find(c) == std::string::npos;
}

class Cursor {
public:
  Cursor(std::string text, int line) : s_(std::move(text)), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    size_t at = pos_;
    while (at < s_.size() && std::isspace(static_cast<unsigned char>(s_[at]))) ++at;
    throw ParseError(line_, int(at) + 1, what);
  }
  [[noreturn]] void fail_at(size_t pos, const std::string& what) const { throw ParseError(line_, int(pos) + 1, what); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    ws();
    return pos_ >= s_.size();
  }
  char peek() {
    ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(const std::string& w) {
    size_t save = pos_;
    ws();
    if (s_.compare(pos_, w.size(), w) == 0 && (pos_ + w.size() == s_.size() || !name_char(s_[pos_ + w.size()]))) {
      pos_ += w.size();
      return true;
    }
    pos_ = save;
    return false;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  std::string word() {
    ws();
    size_t start = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }
  size_t pos() {
    ws();
    return pos_;
  }
  void end() {
    if (!done()) fail("unexpected text");
  }

  // "[a,b]", "(a,inf)" ...
  Interval interval() {
    size_t at = pos();
    bool lo_closed;
    if (accept('[')) lo_closed = true;
    else if (accept('(')) lo_closed = false;
    else fail("expected an interval");
    long lo = integer();
    expect(',');
    bool inf = accept_word("inf");
    long hi = inf ? 0 : integer();
    bool hi_closed;
    if (accept(']')) hi_closed = true;
    else if (accept(')')) hi_closed = false;
    else fail("expected ']' or ')'");
    if (inf) {
      if (hi_closed) fail_at(at, "an infinite bound must be open");
      return Interval::from(lo, lo_closed);
    }
    try {
      return Interval::make(lo, lo_closed, hi, hi_closed);
    } catch (const Error& e) {
      fail_at(at, e.what());
    }
  }

  long integer() {
    ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stol(s_.substr(start, pos_ - start));
  }

  Rational rational() {
    size_t at = pos();
    std::string w = word();
    try {
      return parse_rational(w);
    } catch (const std::exception&) {
      fail_at(at, "bad number '" + w + "'");
    }
  }

private:
  std::string s_;
  size_t pos_ = 0;
  int line_;
};

struct Line {
  int number;
  std::string text;
};

std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string l;
  for (int n = 1; std::getline(in, l); ++n) {
    auto hash = l.find('#');
    if (hash != std::string::npos) l.erase(hash);
    bool blank = true;
    for (char c : l) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (!blank) out.push_back({n, l});
  }
  return out;
}

template <class F>
int lookup(Cursor& c, const std::string& what, F&& index) {
  size_t at = c.pos();
  std::string n = c.word();
  try {
    return index(n);
  } catch (const Error&) {
    c.fail_at(at, "unknown " + what + " '" + n + "'");
  }
}

int index_in(const std::vector<std::string>& names, const std::string& n) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return int(i);
  throw Error("unknown");
}

std::string tokens_text(const Marking& m, const std::vector<std::string>& places) {
  if (m.empty()) return "-";
  std::string s;
  for (const auto& t : m) s += (s.empty() ? "" : " ") + places[t.place] + "@" + to_string(t.age);
  return s;
}

std::string counts_text(const Counts& m, const std::vector<std::string>& places) {
  std::string s;
  for (size_t p = 0; p < m.size(); ++p)
    for (int k = 0; k < m[p]; ++k) s += (s.empty() ? "" : " ") + places[p];
  return s.empty() ? "-" : s;
}

}  // namespace

std::string to_string(NetKind k) {
  switch (k) {
    case NetKind::ptpn: return "ptpn";
    case NetKind::sdtn: return "sdtn";
    case NetKind::inhibitor: return "inhibitor";
  }
  return "?";
}

Interval parse_interval(const std::string& text) {
  Cursor c(text, 1);
  Interval iv = c.interval();
  c.end();
  return iv;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

bool at_keyword(const Cursor& c, std::initializer_list<const char*> stop) {
  for (const char* s : stop) {
    Cursor probe = c;
    if (probe.accept_word(s)) return true;
  }
  return false;
}

// place names with repetition up to one of the keywords (left unread), or "-"
Counts read_counts(Cursor& c, const std::vector<std::string>& places, std::initializer_list<const char*> stop) {
  Counts m(places.size(), 0);
  if (c.accept_word("-")) return m;
  while (!c.done() && !at_keyword(c, stop)) {
    int p = lookup(c, "place", [&](const std::string& n) { return index_in(places, n); });
    m[p] += 1;
  }
  return m;
}

// "p1@3 p2@5/2" up to one of the keywords, or "-"
Marking read_tokens(Cursor& c, const std::vector<std::string>& places, std::initializer_list<const char*> stop) {
  Marking m;
  if (c.accept_word("-")) return m;
  while (!c.done() && !at_keyword(c, stop)) {
    int p = lookup(c, "place", [&](const std::string& n) { return index_in(places, n); });
    c.expect('@');
    m.push_back({p, c.rational()});
    if (m.back().age < 0) c.fail("negative age");
  }
  normalize(m);
  return m;
}

}  // namespace

NetDocument parse_net(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, 1, "empty net document");
  NetDocument doc;
  {
    Cursor c(lines[0].text, lines[0].number);
    c.expect_word("net");
    if (c.accept_word("ptpn")) doc.kind = NetKind::ptpn;
    else if (c.accept_word("sdtn")) doc.kind = NetKind::sdtn;
    else if (c.accept_word("inhibitor")) doc.kind = NetKind::inhibitor;
    else c.fail("expected ptpn, sdtn or inhibitor");
    c.end();
  }
  std::vector<std::string> states, places;
  std::vector<long> costs;
  std::vector<Transition> ptrans;
  std::vector<NetTransition> ntrans;
  std::vector<std::pair<int, int>> st;
  std::optional<std::pair<int, int>> inhibitor;
  int inhibitor_line = 0;
  bool have_states = false, have_places = false;
  auto state = [&](Cursor& c) { return lookup(c, "state", [&](const std::string& n) { return index_in(states, n); }); };
  auto place = [&](Cursor& c) { return lookup(c, "place", [&](const std::string& n) { return index_in(places, n); }); };
  bool ptpn = doc.kind == NetKind::ptpn;

  for (size_t i = 1; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    size_t key_at = c.pos();
    std::string key = c.word();
    if (key == "states") {
      if (have_states) c.fail_at(key_at, "duplicate states line");
      have_states = true;
      while (!c.done()) {
        size_t at = c.pos();
        std::string n = c.word();
        for (const auto& s : states)
          if (s == n) c.fail_at(at, "duplicate state '" + n + "'");
        states.push_back(n);
      }
    } else if (key == "places") {
      if (have_places) c.fail_at(key_at, "duplicate places line");
      have_places = true;
      while (!c.done()) {
        size_t at = c.pos();
        std::string n = c.word();
        for (const auto& s : places)
          if (s == n) c.fail_at(at, "duplicate place '" + n + "'");
        long cost = 0;
        if (c.accept(':')) {
          if (!ptpn) c.fail("place costs only apply to ptpn nets");
          cost = c.integer();
        }
        places.push_back(n);
        costs.push_back(cost);
      }
    } else if (key == "transition") {
      if (!have_states || !have_places) c.fail_at(key_at, "transitions must follow the states and places lines");
      std::string name = c.word();
      int from = state(c);
      c.expect_word("->");
      int to = state(c);
      if (ptpn) {
        Transition t{name, from, to, {}, {}, {}, 0};
        if (c.accept_word("cost")) t.cost = c.integer();
        c.expect(':');
        while (!c.done()) {
          c.expect('(');
          int p = place(c);
          c.expect(',');
          Interval iv = c.interval();
          c.expect(',');
          size_t at = c.pos();
          std::string role = c.word();
          c.expect(')');
          if (role == "in") t.in.push_back({p, iv});
          else if (role == "read") t.read.push_back({p, iv});
          else if (role == "out") t.out.push_back({p, iv});
          else c.fail_at(at, "role must be in, read or out");
        }
        ptrans.push_back(t);
      } else {
        NetTransition t{name, from, to, Counts(places.size(), 0), Counts(places.size(), 0), false};
        c.expect(':');
        c.expect_word("in");
        t.in = read_counts(c, places, {"out"});
        c.expect_word("out");
        t.out = read_counts(c, places, {"transfer"});
        if (c.accept_word("transfer")) {
          if (doc.kind != NetKind::sdtn) c.fail("transfer transitions only exist in sdtn nets");
          t.transfer = true;
        }
        c.end();
        ntrans.push_back(t);
      }
    } else if (key == "transfer") {
      if (doc.kind != NetKind::sdtn) c.fail_at(key_at, "transfer pairs only exist in sdtn nets");
      int sr = place(c);
      c.expect_word("->");
      int tg = place(c);
      c.end();
      st.push_back({sr, tg});
    } else if (key == "inhibitor") {
      if (doc.kind != NetKind::inhibitor) c.fail_at(key_at, "inhibitor arcs only exist in inhibitor nets");
      if (inhibitor) c.fail_at(key_at, "only one inhibitor arc is allowed");
      int p = place(c);
      size_t at = c.pos();
      std::string tn = c.word();
      int t = -1;
      for (size_t k = 0; k < ntrans.size(); ++k)
        if (ntrans[k].name == tn) t = int(k);
      if (t < 0) c.fail_at(at, "unknown transition '" + tn + "'");
      c.end();
      inhibitor = {p, t};
      inhibitor_line = lines[i].number;
    } else if (key == "init") {
      int q = state(c);
      c.expect(':');
      if (ptpn) doc.init = ConcreteConfig{q, read_tokens(c, places, {})};
      else doc.net_init = NetConfig{q, read_counts(c, places, {})};
      c.end();
    } else if (key == "final") {
      int q = state(c);
      if (ptpn) {
        doc.final_state = q;
      } else {
        c.expect(':');
        doc.net_final = NetConfig{q, read_counts(c, places, {})};
      }
      c.end();
    } else {
      c.fail_at(key_at, "unknown keyword '" + key + "'");
    }
  }
  if (!have_states) throw ParseError(lines.back().number, 1, "missing states line");
  if (!have_places) throw ParseError(lines.back().number, 1, "missing places line");
  try {
    switch (doc.kind) {
      case NetKind::ptpn:
        doc.ptpn = PtpnNet{states, places, costs, ptrans};
        doc.ptpn.validate();
        break;
      case NetKind::sdtn:
        doc.sdtn = SdtnNet{states, places, ntrans, st};
        doc.sdtn.validate();
        break;
      case NetKind::inhibitor:
        if (!inhibitor) throw Error("missing inhibitor line");
        doc.inhibitor = InhibitorNet{states, places, ntrans, inhibitor->first, inhibitor->second};
        doc.inhibitor.validate();
        break;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(inhibitor_line ? inhibitor_line : lines.back().number, 1, e.what());
  }
  return doc;
}

std::string print(const NetDocument& doc) {
  std::ostringstream o;
  o << "net " << to_string(doc.kind) << "\n";
  bool ptpn = doc.kind == NetKind::ptpn;
  const auto& states = ptpn ? doc.ptpn.states : doc.kind == NetKind::sdtn ? doc.sdtn.states : doc.inhibitor.states;
  const auto& places = ptpn ? doc.ptpn.places : doc.kind == NetKind::sdtn ? doc.sdtn.places : doc.inhibitor.places;
  o << "states";
  for (const auto& s : states) o << " " << s;
  o << "\nplaces";
  for (size_t p = 0; p < places.size(); ++p) {
    o << " " << places[p];
    if (ptpn) o << ":" << doc.ptpn.place_cost[p];
  }
  o << "\n";
  if (ptpn) {
    for (const auto& t : doc.ptpn.transitions) {
      o << "transition " << t.name << " " << states[t.from] << " -> " << states[t.to];
      if (t.cost) o << " cost " << t.cost;
      o << " :";
      auto arcs = [&](const std::vector<Arc>& as, const char* role) {
        for (const auto& a : as) o << " (" << places[a.place] << ", " << to_string(a.iv) << ", " << role << ")";
      };
      arcs(t.in, "in");
      arcs(t.read, "read");
      arcs(t.out, "out");
      o << "\n";
    }
    if (doc.init) o << "init " << states[doc.init->state] << " : " << tokens_text(doc.init->marking, places) << "\n";
    if (doc.final_state) o << "final " << states[*doc.final_state] << "\n";
  } else {
    const auto& ts = doc.kind == NetKind::sdtn ? doc.sdtn.transitions : doc.inhibitor.transitions;
    for (const auto& t : ts) {
      o << "transition " << t.name << " " << states[t.from] << " -> " << states[t.to] << " : in "
        << counts_text(t.in, places) << " out " << counts_text(t.out, places);
      if (t.transfer) o << " transfer";
      o << "\n";
    }
    if (doc.kind == NetKind::sdtn)
      for (auto [sr, tg] : doc.sdtn.st) o << "transfer " << places[sr] << " -> " << places[tg] << "\n";
    else
      o << "inhibitor " << places[doc.inhibitor.inhibitor_place] << " "
        << ts[doc.inhibitor.inhibited_transition].name << "\n";
    if (doc.net_init)
      o << "init " << states[doc.net_init->state] << " : " << counts_text(doc.net_init->marking, places) << "\n";
    if (doc.net_final)
      o << "final " << states[doc.net_final->state] << " : " << counts_text(doc.net_final->marking, places) << "\n";
  }
  return o.str();
}

TraceDocument parse_trace(const std::string& text, const PtpnNet& net) {
  auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, 1, "empty trace document");
  {
    Cursor c(lines[0].text, lines[0].number);
    c.expect_word("trace");
    c.end();
  }
  TraceDocument doc;
  bool have_init = false;
  auto state = [&](Cursor& c) { return lookup(c, "state", [&](const std::string& n) { return net.state_index(n); }); };
  for (size_t i = 1; i < lines.size(); ++i) {
    Cursor c(lines[i].text, lines[i].number);
    size_t key_at = c.pos();
    std::string key = c.word();
    if (key == "init") {
      if (have_init) c.fail_at(key_at, "duplicate init line");
      have_init = true;
      int q = state(c);
      c.expect(':');
      doc.trace.init = {q, read_tokens(c, net.places, {})};
      c.end();
    } else if (!have_init) {
      c.fail_at(key_at, "the init line must come first");
    } else if (key == "delay") {
      Rational d = c.rational();
      if (d < 0) c.fail("negative delay");
      c.end();
      doc.trace.steps.push_back(TimedStep{d});
    } else if (key == "fire") {
      if (doc.declared_cost) c.fail_at(key_at, "steps after the cost line");
      int t = lookup(c, "transition", [&](const std::string& n) { return net.transition_index(n); });
      DiscreteStep s{t, {}, {}, {}};
      c.expect_word("in");
      s.in = read_tokens(c, net.places, {"read"});
      c.expect_word("read");
      s.read = read_tokens(c, net.places, {"out"});
      c.expect_word("out");
      s.out = read_tokens(c, net.places, {});
      c.end();
      doc.trace.steps.push_back(s);
    } else if (key == "cost") {
      if (doc.declared_cost) c.fail_at(key_at, "duplicate cost line");
      doc.declared_cost = c.rational();
      c.end();
    } else {
      c.fail_at(key_at, "unknown keyword '" + key + "'");
    }
  }
  if (!have_init) throw ParseError(lines.back().number, 1, "missing init line");
  return doc;
}

std::string print_trace(const PtpnNet& net, const Trace& trace) {
  std::ostringstream o;
  o << "trace\n";
  o << "init " << net.states[trace.init.state] << " : " << tokens_text(trace.init.marking, net.places) << "\n";
  for (const auto& step : trace.steps) {
    if (const auto* d = std::get_if<TimedStep>(&step)) {
      o << "delay " << to_string(d->delay) << "\n";
    } else {
      const auto& s = std::get<DiscreteStep>(step);
      o << "fire " << net.transitions[s.transition].name << " in " << tokens_text(s.in, net.places) << " read "
        << tokens_text(s.read, net.places) << " out " << tokens_text(s.out, net.places) << "\n";
    }
  }
  o << "cost " << to_string(trace_cost(net, trace)) << "\n";
  return o.str();
}

ConcreteConfig parse_config(const std::string& text, const PtpnNet& net) {
  auto lines = lines_of(text);
  if (lines.size() != 1) throw ParseError(lines.empty() ? 1 : lines[1].number, 1, "expected one config line");
  Cursor c(lines[0].text, lines[0].number);
  c.expect_word("config");
  int q = lookup(c, "state", [&](const std::string& n) { return net.state_index(n); });
  c.expect(':');
  ConcreteConfig cfg{q, read_tokens(c, net.places, {})};
  c.end();
  return cfg;
}

std::string print_config(const PtpnNet& net, const ConcreteConfig& c) {
  return "config " + net.states[c.state] + " : " + tokens_text(c.marking, net.places) + "\n";
}

AbstractConfig parse_abstract(const std::string& text, const PtpnNet& net) {
  auto lines = lines_of(text);
  if (lines.size() != 1) throw ParseError(lines.empty() ? 1 : lines[1].number, 1, "expected one line");
  Cursor c(lines[0].text, lines[0].number);
  AbstractConfig a;
  a.state = lookup(c, "state", [&](const std::string& n) { return net.state_index(n); });
  int top = net.cmax() + 1;
  auto group = [&]() {
    Group g;
    c.expect('[');
    if (!c.accept(']')) {
      do {
        c.expect('(');
        int p = lookup(c, "place", [&](const std::string& n) { return net.place_index(n); });
        c.expect(',');
        size_t at = c.pos();
        long age = c.integer();
        if (age > top) c.fail_at(at, "age above cmax+1");
        c.expect(')');
        g.push_back({p, int(age)});
      } while (c.accept(','));
      c.expect(']');
    }
    normalize(g);
    return g;
  };
  auto word = [&](std::vector<Group>& w) {
    while (c.peek() == '[') {
      size_t at = c.pos();
      w.push_back(group());
      if (w.back().empty()) c.fail_at(at, "empty group outside the center");
    }
  };
  c.expect('<');
  word(a.high);
  c.expect('|');
  a.center = group();
  c.expect('|');
  word(a.low);
  c.expect('>');
  c.end();
  return a;
}

}  // namespace ptpn
