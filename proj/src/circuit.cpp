#include "pct/circuit.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "pct/sat.hpp"
#include "pct/tseitin.hpp"

namespace pct {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Nand: return "NAND";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Xnor: return "XNOR";
    case GateKind::Not: return "NOT";
    case GateKind::Buf: return "BUF";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from(const std::string& s) {
  static const std::pair<const char*, GateKind> table[] = {
      {"AND", GateKind::And},   {"OR", GateKind::Or},   {"NAND", GateKind::Nand},
      {"NOR", GateKind::Nor},   {"XOR", GateKind::Xor}, {"XNOR", GateKind::Xnor},
      {"NOT", GateKind::Not},   {"BUF", GateKind::Buf},
  };
  for (auto& [name, kind] : table)
    if (s == name) return kind;
  return std::nullopt;
}

uint32_t min_arity(GateKind k) {
  return (k == GateKind::Not || k == GateKind::Buf) ? 1 : 2;
}

uint32_t max_arity(GateKind k) {
  return (k == GateKind::Not || k == GateKind::Buf) ? 1 : UINT32_MAX;
}

bool eval_gate(GateKind k, const std::vector<bool>& ins) {
  auto all = [&] { return std::all_of(ins.begin(), ins.end(), [](bool b) { return b; }); };
  auto any = [&] { return std::any_of(ins.begin(), ins.end(), [](bool b) { return b; }); };
  auto parity = [&] {
    bool p = false;
    for (bool b : ins) p ^= b;
    return p;
  };
  switch (k) {
    case GateKind::And: return all();
    case GateKind::Or: return any();
    case GateKind::Nand: return !all();
    case GateKind::Nor: return !any();
    case GateKind::Xor: return parity();
    case GateKind::Xnor: return !parity();
    case GateKind::Not: return !ins[0];
    case GateKind::Buf: return ins[0];
  }
  return false;
}

std::optional<Var> Circuit::find_signal(const std::string& name) const {
  for (Var s = 0; s < num_signals(); ++s)
    if (signal_names_[s] == name) return s;
  return std::nullopt;
}

std::optional<uint32_t> Circuit::driver(Var s) const {
  if (s < num_inputs_) return std::nullopt;
  return s - num_inputs_;
}

std::vector<Var> Circuit::input_vars() const {
  std::vector<Var> v(num_inputs_);
  for (Var i = 0; i < num_inputs_; ++i) v[i] = i;
  return v;
}

VarTable Circuit::var_table() const {
  VarTable t;
  for (Var s = 0; s < num_signals(); ++s) {
    VarRole role = is_input(s) ? VarRole::Input
                 : s == output_ ? VarRole::Output
                                : VarRole::Internal;
    t.add(signal_names_[s], role);
  }
  return t;
}

// --- builder -----------------------------------------------------------------

void CircuitBuilder::add_input(const std::string& name) {
  if (has_signal(name))
    throw ValidationError("multiple drivers for signal '" + name + "'");
  inputs_.push_back(name);
  declared_.push_back(name);
}

bool CircuitBuilder::has_signal(const std::string& name) const {
  return std::find(declared_.begin(), declared_.end(), name) != declared_.end();
}

std::string CircuitBuilder::fresh_name(const std::string& base) {
  if (!has_signal(base)) return base;
  for (uint32_t i = 2;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!has_signal(cand)) return cand;
  }
}

void CircuitBuilder::add_gate(const std::string& out, GateKind kind,
                              std::vector<std::string> fanins) {
  if (has_signal(out))
    throw ValidationError("multiple drivers for signal '" + out + "'");
  if (fanins.size() < min_arity(kind) || fanins.size() > max_arity(kind))
    throw ValidationError("gate '" + out + "': " + to_string(kind) + " takes " +
                          (min_arity(kind) == 1 ? "exactly 1 fanin" : "at least 2 fanins"));

  // Lower wide XOR/XNOR into a balanced tree of two-input gates.
  if ((kind == GateKind::Xor || kind == GateKind::Xnor) && fanins.size() > 2) {
    std::vector<std::string> layer = std::move(fanins);
    uint32_t tmp = 0;
    while (layer.size() > 2) {
      std::vector<std::string> next;
      for (size_t i = 0; i + 1 < layer.size(); i += 2) {
        std::string t = fresh_name(out + "_x" + std::to_string(tmp++));
        gates_.push_back({t, GateKind::Xor, {layer[i], layer[i + 1]}});
        declared_.push_back(t);
        next.push_back(t);
      }
      if (layer.size() % 2) next.push_back(layer.back());
      layer = std::move(next);
    }
    gates_.push_back({out, kind, std::move(layer)});
    declared_.push_back(out);
    return;
  }

  gates_.push_back({out, kind, std::move(fanins)});
  declared_.push_back(out);
}

void CircuitBuilder::set_output(const std::string& name) {
  if (output_)
    throw ValidationError("OUTPUT declared twice ('" + *output_ + "' and '" + name + "')");
  output_ = name;
}

Circuit CircuitBuilder::build() && {
  if (!output_) throw ValidationError("no OUTPUT declared");

  std::unordered_map<std::string, uint32_t> gate_of;  // out name -> index in gates_
  std::unordered_set<std::string> input_set(inputs_.begin(), inputs_.end());
  for (uint32_t i = 0; i < gates_.size(); ++i) gate_of.emplace(gates_[i].out, i);

  for (const RawGate& g : gates_)
    for (const std::string& f : g.fanins)
      if (!input_set.count(f) && !gate_of.count(f))
        throw ValidationError("dangling reference: gate '" + g.out + "' reads undeclared signal '" + f + "'");

  if (input_set.count(*output_))
    throw ValidationError("output '" + *output_ + "' must be driven by a gate, not a primary input");
  if (!gate_of.count(*output_))
    throw ValidationError("dangling reference: OUTPUT names undeclared signal '" + *output_ + "'");

  // Kahn's algorithm; ready set ordered by declaration index for stability.
  std::vector<uint32_t> indegree(gates_.size(), 0);
  std::vector<std::vector<uint32_t>> consumers(gates_.size());
  for (uint32_t i = 0; i < gates_.size(); ++i)
    for (const std::string& f : gates_[i].fanins)
      if (auto it = gate_of.find(f); it != gate_of.end()) {
        ++indegree[i];
        consumers[it->second].push_back(i);
      }

  std::set<uint32_t> ready;
  for (uint32_t i = 0; i < gates_.size(); ++i)
    if (indegree[i] == 0) ready.insert(i);

  std::vector<uint32_t> topo;
  while (!ready.empty()) {
    uint32_t i = *ready.begin();
    ready.erase(ready.begin());
    topo.push_back(i);
    for (uint32_t c : consumers[i])
      if (--indegree[c] == 0) ready.insert(c);
  }
  if (topo.size() != gates_.size()) {
    for (uint32_t i = 0; i < gates_.size(); ++i)
      if (indegree[i] != 0)
        throw ValidationError("cycle detected involving gate '" + gates_[i].out + "'");
  }

  Circuit c;
  c.name_ = std::move(name_);
  c.num_inputs_ = static_cast<uint32_t>(inputs_.size());
  c.signal_names_ = inputs_;

  std::unordered_map<std::string, Var> signal_id;
  for (Var s = 0; s < inputs_.size(); ++s) signal_id.emplace(inputs_[s], s);
  for (uint32_t rank = 0; rank < topo.size(); ++rank) {
    const RawGate& g = gates_[topo[rank]];
    Var out = c.num_inputs_ + rank;
    signal_id.emplace(g.out, out);
    c.signal_names_.push_back(g.out);
  }
  for (uint32_t rank = 0; rank < topo.size(); ++rank) {
    const RawGate& g = gates_[topo[rank]];
    Gate gate;
    gate.id = rank;
    gate.kind = g.kind;
    gate.out = c.num_inputs_ + rank;
    for (const std::string& f : g.fanins) gate.fanins.push_back(signal_id.at(f));
    c.gates_.push_back(std::move(gate));
  }
  c.output_ = signal_id.at(*output_);
  return c;
}

// --- simulation --------------------------------------------------------------

Bits simulate_bits(const Circuit& n, const Bits& x) {
  if (x.width() != n.num_inputs())
    throw ValidationError("simulate: input assignment width does not match input count");
  Bits values(n.num_signals());
  for (uint32_t i = 0; i < n.num_inputs(); ++i) values.set(i, x.get(i));
  std::vector<bool> ins;
  for (const Gate& g : n.gates()) {
    ins.clear();
    for (Var f : g.fanins) ins.push_back(values.get(f));
    values.set(g.out, eval_gate(g.kind, ins));
  }
  return values;
}

Assignment simulate(const Circuit& n, const Assignment& x) {
  std::vector<Var> want = n.input_vars();
  if (x.domain != want)
    throw ValidationError("simulate: assignment domain must be exactly the circuit inputs");
  return Assignment::full(n.num_signals(), simulate_bits(n, x.bits));
}

// --- miters ------------------------------------------------------------------

namespace {

// Copy m's gates into b with renamed outputs; returns old signal -> new name.
std::vector<std::string> splice_gates(CircuitBuilder& b, const Circuit& m,
                                      const std::string& prefix) {
  std::vector<std::string> new_name(m.num_signals());
  for (Var s = 0; s < m.num_inputs(); ++s) new_name[s] = m.signal_name(s);
  for (const Gate& g : m.gates()) {
    std::string out = b.fresh_name(prefix + m.signal_name(g.out));
    std::vector<std::string> fanins;
    for (Var f : g.fanins) fanins.push_back(new_name[f]);
    b.add_gate(out, g.kind, std::move(fanins));
    new_name[g.out] = out;
  }
  return new_name;
}

}  // namespace

Circuit build_miter(const Circuit& m1, const Circuit& m2) {
  return build_miter(m1, m2, {m1.signal_name(m1.output())}, {m2.signal_name(m2.output())},
                     MiterReduction::Or);
}

Circuit build_miter(const Circuit& m1, const Circuit& m2,
                    const std::vector<std::string>& outs1,
                    const std::vector<std::string>& outs2,
                    MiterReduction reduction) {
  if (m1.num_inputs() != m2.num_inputs())
    throw ValidationError("build_miter: input-set mismatch (different input counts)");
  for (Var i = 0; i < m1.num_inputs(); ++i)
    if (m1.signal_name(i) != m2.signal_name(i))
      throw ValidationError("build_miter: input-set mismatch at position " + std::to_string(i) +
                            " ('" + m1.signal_name(i) + "' vs '" + m2.signal_name(i) + "')");
  if (outs1.empty() || outs1.size() != outs2.size())
    throw ValidationError("build_miter: output lists must be nonempty and equally long");

  CircuitBuilder b(m1.name() + "_vs_" + m2.name());
  for (Var i = 0; i < m1.num_inputs(); ++i) b.add_input(m1.signal_name(i));

  std::vector<std::string> n1 = splice_gates(b, m1, "a_");
  std::vector<std::string> n2 = splice_gates(b, m2, "b_");

  auto resolve = [](const Circuit& m, const std::vector<std::string>& names,
                    const std::string& sig) {
    auto s = m.find_signal(sig);
    if (!s) throw ValidationError("build_miter: no signal '" + sig + "' in circuit " + m.name());
    return names[*s];
  };

  std::vector<std::string> diffs;
  for (size_t i = 0; i < outs1.size(); ++i) {
    std::string d = b.fresh_name("diff" + std::to_string(i));
    b.add_gate(d, GateKind::Xor, {resolve(m1, n1, outs1[i]), resolve(m2, n2, outs2[i])});
    diffs.push_back(d);
  }

  std::string out;
  if (diffs.size() == 1) {
    out = diffs[0];
  } else {
    out = b.fresh_name("miter_out");
    b.add_gate(out, reduction == MiterReduction::Or ? GateKind::Or : GateKind::And, diffs);
  }
  b.set_output(out);
  return std::move(b).build();
}

// --- cuts --------------------------------------------------------------------

std::vector<Var> Cut::boundary() const {
  std::vector<Var> b = inputs_in_cut;
  b.insert(b.end(), cut_vars.begin(), cut_vars.end());
  std::sort(b.begin(), b.end());
  return b;
}

FrontierWalk::FrontierWalk(const Circuit& n)
    : n_(n), seen_gate_(n.gates().size(), false), seen_input_(n.num_inputs(), false) {
  uint32_t out_gate = *n.driver(n.output());
  frontier_.push_back({0, -static_cast<int64_t>(out_gate)});
  seen_gate_[out_gate] = true;
}

void FrontierWalk::pop_expand() {
  if (frontier_.empty()) throw ValidationError("frontier walk exhausted");
  auto it = std::min_element(frontier_.begin(), frontier_.end());
  auto [depth, neg_id] = *it;
  frontier_.erase(it);
  const Gate& g = n_.gate(static_cast<uint32_t>(-neg_id));
  for (Var f : g.fanins) {
    if (n_.is_input(f)) {
      if (!seen_input_[f]) {
        seen_input_[f] = true;
        inputs_.push_back(f);
      }
    } else {
      uint32_t gid = *n_.driver(f);
      if (!seen_gate_[gid]) {
        seen_gate_[gid] = true;
        frontier_.push_back({depth + 1, -static_cast<int64_t>(gid)});
      }
    }
  }
}

Cut FrontierWalk::cut() const {
  Cut c;
  for (auto& [depth, neg_id] : frontier_) c.gate_ids.push_back(static_cast<uint32_t>(-neg_id));
  std::sort(c.gate_ids.begin(), c.gate_ids.end());
  for (uint32_t gid : c.gate_ids) c.cut_vars.push_back(n_.gate(gid).out);
  c.inputs_in_cut = inputs_;
  std::sort(c.inputs_in_cut.begin(), c.inputs_in_cut.end());
  return c;
}

Cut gen_cut(const Circuit& n, uint32_t size) {
  if (size < 1 || size > n.gates().size())
    throw ValidationError("gen_cut: size must be between 1 and the gate count (" +
                          std::to_string(n.gates().size()) + ")");
  FrontierWalk walk(n);
  while (!walk.done() && walk.frontier_size() < size) walk.pop_expand();
  return walk.cut();
}

bool is_valid_cut(const Circuit& n, const Cut& r) {
  for (size_t i = 1; i < r.cut_vars.size(); ++i)
    if (r.cut_vars[i] == r.cut_vars[i - 1]) return false;
  std::unordered_set<uint32_t> cut_gates(r.gate_ids.begin(), r.gate_ids.end());
  std::unordered_set<Var> cut_inputs(r.inputs_in_cut.begin(), r.inputs_in_cut.end());
  for (uint32_t gid : r.gate_ids)
    if (gid >= n.gates().size()) return false;

  // Walk backward from the output without entering cut gates; the cut is
  // valid iff no foreign primary input is reachable.
  uint32_t out_gate = *n.driver(n.output());
  if (cut_gates.count(out_gate)) return true;  // boundary right at the output
  std::vector<uint32_t> stack{out_gate};
  std::unordered_set<uint32_t> visited{out_gate};
  while (!stack.empty()) {
    const Gate& g = n.gate(stack.back());
    stack.pop_back();
    for (Var f : g.fanins) {
      if (n.is_input(f)) {
        if (!cut_inputs.count(f)) return false;
      } else {
        uint32_t gid = *n.driver(f);
        if (cut_gates.count(gid) || visited.count(gid)) continue;
        visited.insert(gid);
        stack.push_back(gid);
      }
    }
  }
  return true;
}

Circuit subcircuit_above_cut(const Circuit& n, const Cut& r) {
  if (!is_valid_cut(n, r))
    throw ValidationError("subcircuit_above_cut: not a valid cut of this circuit");

  std::unordered_set<uint32_t> cut_gates(r.gate_ids.begin(), r.gate_ids.end());
  std::vector<Var> boundary = r.boundary();
  std::unordered_set<Var> boundary_set(boundary.begin(), boundary.end());

  // Gates strictly above the cut, in the original topological order.
  std::vector<bool> above(n.gates().size(), false);
  uint32_t out_gate = *n.driver(n.output());
  if (!cut_gates.count(out_gate)) {
    std::vector<uint32_t> stack{out_gate};
    above[out_gate] = true;
    while (!stack.empty()) {
      const Gate& g = n.gate(stack.back());
      stack.pop_back();
      for (Var f : g.fanins) {
        if (boundary_set.count(f) || n.is_input(f)) continue;
        uint32_t gid = *n.driver(f);
        if (cut_gates.count(gid) || above[gid]) continue;
        above[gid] = true;
        stack.push_back(gid);
      }
    }
  }

  CircuitBuilder b(n.name() + "_above");
  for (Var s : boundary) b.add_input(n.signal_name(s));
  for (const Gate& g : n.gates()) {
    if (!above[g.id]) continue;
    std::vector<std::string> fanins;
    for (Var f : g.fanins) fanins.push_back(n.signal_name(f));
    b.add_gate(n.signal_name(g.out), g.kind, fanins);
  }
  if (boundary_set.count(n.output())) {
    // The cut sits at the output gate; the subcircuit is a buffer of it.
    std::string out = b.fresh_name(n.signal_name(n.output()) + "_out");
    b.add_gate(out, GateKind::Buf, {n.signal_name(n.output())});
    b.set_output(out);
  } else {
    b.set_output(n.signal_name(n.output()));
  }
  return std::move(b).build();
}

// --- redundancy --------------------------------------------------------------

RedundancyVerdict check_nonredundant(const Circuit& n, uint64_t seed) {
  SatResult base = solve(tseitin_encode(n), seed);
  if (base.is_sat()) {
    const Assignment& m = base.model();
    Bits x(n.num_inputs());
    for (Var i = 0; i < n.num_inputs(); ++i) x.set(i, m.bits.get(i));
    return {RedundancyVerdict::Kind::NotConstantZero, std::nullopt,
            Assignment(n.input_vars(), x)};
  }

  FrontierWalk walk(n);
  while (!walk.done()) {
    walk.pop_expand();
    Cut r = walk.cut();
    if (r.gate_ids.empty()) break;  // primary-input cut: excluded by definition
    Circuit above = subcircuit_above_cut(n, r);
    if (!solve(tseitin_encode(above), seed).is_sat())
      return {RedundancyVerdict::Kind::RedundantAt, r, std::nullopt};
  }
  return {RedundancyVerdict::Kind::Nonredundant, std::nullopt, std::nullopt};
}

std::vector<Assignment> cut_image(const Circuit& n, const Cut& r,
                                  const std::vector<Bits>& tests) {
  std::vector<Var> boundary = r.boundary();
  std::vector<Assignment> out;
  std::unordered_set<Bits, BitsHash> seen;
  for (const Bits& x : tests) {
    Bits trace = simulate_bits(n, x);
    Bits proj(static_cast<uint32_t>(boundary.size()));
    for (uint32_t i = 0; i < boundary.size(); ++i) proj.set(i, trace.get(boundary[i]));
    if (seen.insert(proj).second) out.push_back(Assignment(boundary, proj));
  }
  return out;
}

std::vector<Assignment> unreachable_cut_assignments(const Circuit& n, const Cut& r,
                                                    uint32_t max_inputs) {
  if (n.num_inputs() > max_inputs)
    throw ValidationError("unreachable_cut_assignments: " + std::to_string(n.num_inputs()) +
                          " inputs exceed the exhaustive-enumeration bound of " +
                          std::to_string(max_inputs));
  std::vector<Var> boundary = r.boundary();
  if (boundary.size() > max_inputs)
    throw ValidationError("unreachable_cut_assignments: cut too wide for enumeration");

  std::unordered_set<Bits, BitsHash> reachable;
  for (uint64_t v = 0; v < (uint64_t{1} << n.num_inputs()); ++v) {
    Bits x(n.num_inputs());
    for (uint32_t i = 0; i < n.num_inputs(); ++i) x.set(i, (v >> i) & 1);
    Bits trace = simulate_bits(n, x);
    Bits proj(static_cast<uint32_t>(boundary.size()));
    for (uint32_t i = 0; i < boundary.size(); ++i) proj.set(i, trace.get(boundary[i]));
    reachable.insert(proj);
  }

  std::vector<Assignment> out;
  for (uint64_t v = 0; v < (uint64_t{1} << boundary.size()); ++v) {
    Bits proj(static_cast<uint32_t>(boundary.size()));
    for (uint32_t i = 0; i < boundary.size(); ++i) proj.set(i, (v >> i) & 1);
    if (!reachable.count(proj)) out.push_back(Assignment(boundary, proj));
  }
  return out;
}

}  // namespace pct
