#include "pct/tseitin.hpp"

#include <cassert>

namespace pct {

namespace {

void encode_gate(const Gate& g, CnfFormula& f) {
  Var w = g.out;
  const std::vector<Var>& a = g.fanins;
  auto big = [&](bool fanin_neg, bool out_neg) {
    std::vector<Lit> lits;
    for (Var x : a) lits.push_back(Lit::make(x, fanin_neg));
    lits.push_back(Lit::make(w, out_neg));
    f.add_clause(Clause(std::move(lits)));
  };
  auto pairwise = [&](bool fanin_neg, bool out_neg) {
    for (Var x : a)
      f.add_clause(Clause{Lit::make(x, fanin_neg), Lit::make(w, out_neg)});
  };

  switch (g.kind) {
    case GateKind::Or:    // (a1 ∨ ... ∨ ak ∨ ¬w), (¬ai ∨ w)
      big(false, true);
      pairwise(true, false);
      break;
    case GateKind::And:   // (¬a1 ∨ ... ∨ ¬ak ∨ w), (ai ∨ ¬w)
      big(true, false);
      pairwise(false, true);
      break;
    case GateKind::Nor:   // (a1 ∨ ... ∨ ak ∨ w), (¬ai ∨ ¬w)
      big(false, false);
      pairwise(true, true);
      break;
    case GateKind::Nand:  // (¬a1 ∨ ... ∨ ¬ak ∨ ¬w), (ai ∨ w)
      big(true, true);
      pairwise(false, false);
      break;
    case GateKind::Xor: {
      assert(a.size() == 2);
      if (a[0] == a[1]) {  // x ⊕ x is constantly 0
        f.add_clause(Clause{Lit::neg(w)});
        break;
      }
      f.add_clause(Clause{Lit::neg(w), Lit::pos(a[0]), Lit::pos(a[1])});
      f.add_clause(Clause{Lit::neg(w), Lit::neg(a[0]), Lit::neg(a[1])});
      f.add_clause(Clause{Lit::pos(w), Lit::neg(a[0]), Lit::pos(a[1])});
      f.add_clause(Clause{Lit::pos(w), Lit::pos(a[0]), Lit::neg(a[1])});
      break;
    }
    case GateKind::Xnor: {
      assert(a.size() == 2);
      if (a[0] == a[1]) {  // x ≡ x is constantly 1
        f.add_clause(Clause{Lit::pos(w)});
        break;
      }
      f.add_clause(Clause{Lit::neg(w), Lit::neg(a[0]), Lit::pos(a[1])});
      f.add_clause(Clause{Lit::neg(w), Lit::pos(a[0]), Lit::neg(a[1])});
      f.add_clause(Clause{Lit::pos(w), Lit::pos(a[0]), Lit::pos(a[1])});
      f.add_clause(Clause{Lit::pos(w), Lit::neg(a[0]), Lit::neg(a[1])});
      break;
    }
    case GateKind::Not:
      f.add_clause(Clause{Lit::pos(a[0]), Lit::pos(w)});
      f.add_clause(Clause{Lit::neg(a[0]), Lit::neg(w)});
      break;
    case GateKind::Buf:
      f.add_clause(Clause{Lit::pos(a[0]), Lit::neg(w)});
      f.add_clause(Clause{Lit::neg(a[0]), Lit::pos(w)});
      break;
  }
}

}  // namespace

CnfFormula tseitin_encode(const Circuit& n) {
  return tseitin_encode_detailed(n).formula;
}

CircuitCnf tseitin_encode_detailed(const Circuit& n) {
  CircuitCnf out;
  out.formula = CnfFormula(n.var_table());
  for (const Gate& g : n.gates()) {
    uint32_t begin = out.formula.num_clauses();
    encode_gate(g, out.formula);
    out.gate_clause_ranges.push_back({begin, out.formula.num_clauses()});
  }
  out.output_unit_index = out.formula.add_clause(Clause{Lit::pos(n.output())});
  return out;
}

CnfFormula CircuitCnf::body() const {
  return body_without_gates({});
}

CnfFormula CircuitCnf::body_without_gates(const std::vector<uint32_t>& gate_ids) const {
  std::vector<bool> drop(formula.num_clauses(), false);
  drop[output_unit_index] = true;
  for (uint32_t gid : gate_ids) {
    auto [b, e] = gate_clause_ranges.at(gid);
    for (uint32_t i = b; i < e; ++i) drop[i] = true;
  }
  CnfFormula out(formula.vars());
  for (uint32_t i = 0; i < formula.num_clauses(); ++i)
    if (!drop[i]) out.add_clause(formula.clause(i));
  return out;
}

}  // namespace pct
