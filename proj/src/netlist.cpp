#include "pct/netlist.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace pct {

namespace {

class LineScanner {
public:
  LineScanner(const std::string& line, unsigned lineno) : s_(line), lineno_(lineno) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", lineno_, col());
    ++pos_;
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string name() {
    skip_ws();
    if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      throw ParseError("expected a signal name", lineno_, col());
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  unsigned col() const { return static_cast<unsigned>(pos_) + 1; }
  unsigned line() const { return lineno_; }

private:
  const std::string& s_;
  unsigned lineno_;
  size_t pos_ = 0;
};

}  // namespace

Circuit parse_netlist(const std::string& text, const std::string& name) {
  CircuitBuilder b(name);
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  bool saw_output = false;

  while (std::getline(in, line)) {
    ++lineno;
    LineScanner sc(line, lineno);
    if (sc.at_end()) continue;

    std::string first = sc.name();
    try {
      if (first == "INPUT") {
        b.add_input(sc.name());
      } else if (first == "OUTPUT") {
        if (saw_output) throw ParseError("OUTPUT declared twice", lineno);
        b.set_output(sc.name());
        saw_output = true;
      } else {
        sc.expect('=');
        std::string kind_name = sc.name();
        auto kind = gate_kind_from(kind_name);
        if (!kind) throw ParseError("unknown gate kind '" + kind_name + "'", lineno, sc.col());
        sc.expect('(');
        std::vector<std::string> fanins;
        if (!sc.try_consume(')')) {
          fanins.push_back(sc.name());
          while (sc.try_consume(',')) fanins.push_back(sc.name());
          sc.expect(')');
        }
        b.add_gate(first, *kind, std::move(fanins));
      }
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!sc.at_end())
      throw ParseError("trailing characters", lineno, sc.col());
  }

  return std::move(b).build();
}

std::string write_netlist(const Circuit& n) {
  std::ostringstream out;
  out << "# circuit: " << n.name() << "\n";
  for (Var i = 0; i < n.num_inputs(); ++i) out << "INPUT " << n.signal_name(i) << "\n";
  for (const Gate& g : n.gates()) {
    out << n.signal_name(g.out) << " = " << to_string(g.kind) << "(";
    for (size_t i = 0; i < g.fanins.size(); ++i) {
      if (i) out << ", ";
      out << n.signal_name(g.fanins[i]);
    }
    out << ")\n";
  }
  out << "OUTPUT " << n.signal_name(n.output()) << "\n";
  return out.str();
}

Circuit parse_aiger_ascii(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(std::string("unexpected end of file, expected ") + what, lineno + 1);
    ++lineno;
    return std::istringstream(line);
  };

  auto header = next_line("header");
  std::string magic;
  uint64_t max_var = 0, num_in = 0, num_latch = 0, num_out = 0, num_and = 0;
  if (!(header >> magic >> max_var >> num_in >> num_latch >> num_out >> num_and) || magic != "aag")
    throw ParseError("malformed header, expected 'aag M I L O A'", 1);
  if (num_latch != 0)
    throw ParseError("latches present (" + std::to_string(num_latch) + "); only combinational AIGs are accepted", 1);
  if (num_out != 1)
    throw ParseError(num_out > 1 ? "multiple outputs; exactly one is required"
                                 : "no output; exactly one is required", 1);
  if (num_in + num_and > max_var)
    throw ParseError("malformed header: M < I + A", 1);

  auto read_literal = [&](std::istringstream& ss) {
    uint64_t lit;
    if (!(ss >> lit)) throw ParseError("expected a literal", lineno);
    if (lit <= 1) throw ParseError("constant literal " + std::to_string(lit) + " unsupported", lineno);
    if (lit / 2 > max_var) throw ParseError("literal " + std::to_string(lit) + " out of range", lineno);
    return lit;
  };

  std::unordered_map<uint64_t, std::string> sig_of_var;
  CircuitBuilder b(name);
  for (uint64_t i = 0; i < num_in; ++i) {
    auto ss = next_line("input literal");
    uint64_t lit = read_literal(ss);
    if (lit & 1) throw ParseError("input literal must be even", lineno);
    if (sig_of_var.count(lit / 2)) throw ParseError("variable defined twice", lineno);
    std::string nm = "i" + std::to_string(i + 1);
    sig_of_var[lit / 2] = nm;
    b.add_input(nm);
  }

  auto out_ss = next_line("output literal");
  uint64_t out_lit;
  if (!(out_ss >> out_lit)) throw ParseError("expected the output literal", lineno);
  if (out_lit <= 1) throw ParseError("constant output unsupported", lineno);

  struct AndLine {
    uint64_t lhs, rhs0, rhs1;
    unsigned lineno;
  };
  std::vector<AndLine> ands;
  for (uint64_t i = 0; i < num_and; ++i) {
    auto ss = next_line("and-gate line");
    uint64_t lhs = read_literal(ss);
    uint64_t rhs0 = read_literal(ss);
    uint64_t rhs1 = read_literal(ss);
    if (lhs & 1) throw ParseError("and-gate output literal must be even", lineno);
    if (sig_of_var.count(lhs / 2)) throw ParseError("variable defined twice", lineno);
    sig_of_var[lhs / 2] = "a" + std::to_string(lhs / 2);
    ands.push_back({lhs, rhs0, rhs1, lineno});
  }
  // Symbol table and comments, if any, are ignored.

  std::unordered_map<uint64_t, std::string> inverter_of_var;
  auto signal_for = [&](uint64_t lit, unsigned at_line) -> std::string {
    auto it = sig_of_var.find(lit / 2);
    if (it == sig_of_var.end())
      throw ParseError("literal " + std::to_string(lit) + " references an undefined variable", at_line);
    if (!(lit & 1)) return it->second;
    auto inv = inverter_of_var.find(lit / 2);
    if (inv != inverter_of_var.end()) return inv->second;
    std::string nm = "n" + std::to_string(lit / 2);
    b.add_gate(nm, GateKind::Not, {it->second});
    inverter_of_var.emplace(lit / 2, nm);
    return nm;
  };

  for (const AndLine& a : ands)
    b.add_gate(sig_of_var.at(a.lhs / 2), GateKind::And,
               {signal_for(a.rhs0, a.lineno), signal_for(a.rhs1, a.lineno)});

  // The output must be gate-driven; buffer it when it is a plain input.
  std::string out_sig = signal_for(out_lit, lineno);
  auto it = sig_of_var.find(out_lit / 2);
  bool drives_gate = (out_lit & 1) || (it != sig_of_var.end() && it->second[0] == 'a');
  if (!drives_gate) {
    std::string nm = b.fresh_name("z");
    b.add_gate(nm, GateKind::Buf, {out_sig});
    out_sig = nm;
  }
  b.set_output(out_sig);
  return std::move(b).build();
}

}  // namespace pct
