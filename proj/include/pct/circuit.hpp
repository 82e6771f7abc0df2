#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pct/cnf.hpp"

namespace pct {

enum class GateKind : uint8_t { And, Or, Nand, Nor, Xor, Xnor, Not, Buf };

const char* to_string(GateKind k);
std::optional<GateKind> gate_kind_from(const std::string& s);

// NOT/BUF take exactly one fanin, everything else at least two.
uint32_t min_arity(GateKind k);
uint32_t max_arity(GateKind k);

bool eval_gate(GateKind k, const std::vector<bool>& ins);

struct Gate {
  uint32_t id;                  // position in the topological gate list
  GateKind kind;
  std::vector<Var> fanins;      // signal ids (inputs or earlier gate outputs)
  Var out;                      // signal id of the gate output
};

// Single-output combinational circuit. Signals are numbered so that the
// inputs come first in declaration order, followed by one output signal per
// gate in topological order. That numbering doubles as the CNF variable
// numbering used by the Tseitin encoding, so traces and models line up.
class Circuit {
public:
  const std::string& name() const { return name_; }

  uint32_t num_inputs() const { return num_inputs_; }
  uint32_t num_signals() const { return static_cast<uint32_t>(signal_names_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(uint32_t id) const { return gates_.at(id); }
  Var output() const { return output_; }

  const std::string& signal_name(Var s) const { return signal_names_.at(s); }
  std::optional<Var> find_signal(const std::string& name) const;
  bool is_input(Var s) const { return s < num_inputs_; }

  // Gate whose output is s; empty for inputs.
  std::optional<uint32_t> driver(Var s) const;

  std::vector<Var> input_vars() const;

  // Signal names with roles, in signal order. Shared by the Tseitin
  // encoding, simulation and DIMACS output.
  VarTable var_table() const;

private:
  friend class CircuitBuilder;
  std::string name_;
  std::vector<std::string> signal_names_;
  uint32_t num_inputs_ = 0;
  std::vector<Gate> gates_;
  Var output_ = 0;
};

// Incremental construction plus validation: unique drivers, resolvable
// references, acyclicity, arity checks. XOR/XNOR gates wider than two are
// lowered to balanced two-input trees here so the encoding table downstream
// stays closed.
class CircuitBuilder {
public:
  explicit CircuitBuilder(std::string name = "circuit") : name_(std::move(name)) {}

  void add_input(const std::string& name);
  void add_gate(const std::string& out, GateKind kind, std::vector<std::string> fanins);
  void set_output(const std::string& name);

  bool has_signal(const std::string& name) const;
  // Derive an unused signal name from `base`.
  std::string fresh_name(const std::string& base);

  Circuit build() &&;

private:
  struct RawGate {
    std::string out;
    GateKind kind;
    std::vector<std::string> fanins;
  };
  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<RawGate> gates_;
  std::optional<std::string> output_;
  std::vector<std::string> declared_;  // for duplicate detection
};

// --- simulation -------------------------------------------------------------

// Values of every signal under input bits x (bit i = input i).
Bits simulate_bits(const Circuit& n, const Bits& x);

// The unique consistent trace extending x; domain is all signals.
Assignment simulate(const Circuit& n, const Assignment& x);

// --- miters -----------------------------------------------------------------

enum class MiterReduction { Or, And };

// z = XOR(z1, z2); evaluates to 1 exactly where m1 and m2 disagree.
// Requires identical ordered input name lists.
Circuit build_miter(const Circuit& m1, const Circuit& m2);

// Compares the named signal pairs and reduces the per-pair XORs with OR
// (some pair differs) or AND (every pair differs).
Circuit build_miter(const Circuit& m1, const Circuit& m2,
                    const std::vector<std::string>& outs1,
                    const std::vector<std::string>& outs2,
                    MiterReduction reduction);

// --- internal cuts ----------------------------------------------------------

// A frontier separating the output from the inputs: every input-to-output
// path goes through a cut gate or an input listed in inputs_in_cut.
struct Cut {
  std::vector<uint32_t> gate_ids;    // ascending
  std::vector<Var> cut_vars;         // output signals of the cut gates
  std::vector<Var> inputs_in_cut;    // primary inputs reached by the walk

  // Input signals of the subcircuit above the cut, ascending.
  std::vector<Var> boundary() const;
  size_t size() const { return gate_ids.size() + inputs_in_cut.size(); }
};

// Backward breadth-first walk from the output gate. Pops the minimum-depth
// frontier gate (ties: latest in topological order, so consumers leave the
// frontier before the gates feeding them) and pushes unseen fanins.
class FrontierWalk {
public:
  explicit FrontierWalk(const Circuit& n);
  bool done() const { return frontier_.empty(); }
  size_t frontier_size() const { return frontier_.size() + inputs_.size(); }
  void pop_expand();
  Cut cut() const;

private:
  const Circuit& n_;
  // (depth, -gate_id) so that begin() is the pop target.
  std::vector<std::pair<uint32_t, int64_t>> frontier_;
  std::vector<Var> inputs_;
  std::vector<bool> seen_gate_;
  std::vector<bool> seen_input_;
};

// Frontier expansion: grow until |gates| + |inputs| >= size or
// the frontier runs out of gates. 1 <= size <= gate count.
Cut gen_cut(const Circuit& n, uint32_t size);

bool is_valid_cut(const Circuit& n, const Cut& r);

// Circuit between the cut and the output; its inputs are r.boundary().
Circuit subcircuit_above_cut(const Circuit& n, const Cut& r);

// --- redundancy analysis (desk scale) ----------------------------------------

struct SolverLimits;  // sat.hpp

struct RedundancyVerdict {
  enum class Kind { Nonredundant, RedundantAt, NotConstantZero } kind;
  std::optional<Cut> cut;                    // RedundantAt
  std::optional<Assignment> counterexample;  // NotConstantZero, over inputs
};

// Sweeps the canonical frontier sequence and SAT-checks the subcircuit
// above each swept cut. "Nonredundant" covers the swept cuts only; the
// all-cuts property is not decided here.
RedundancyVerdict check_nonredundant(const Circuit& n, uint64_t seed = 0);

// Cut assignments produced by the given tests, deduplicated in first-test
// order. Assignments range over r.boundary().
std::vector<Assignment> cut_image(const Circuit& n, const Cut& r,
                                  const std::vector<Bits>& tests);

// Complement of the reachable cut image over all 2^|X| inputs.
std::vector<Assignment> unreachable_cut_assignments(const Circuit& n, const Cut& r,
                                                    uint32_t max_inputs = 22);

}  // namespace pct
