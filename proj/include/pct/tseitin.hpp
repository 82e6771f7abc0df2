#pragma once

#include "pct/circuit.hpp"
#include "pct/cnf.hpp"

namespace pct {

// Gate-consistency encoding with bookkeeping used by formula relaxation.
struct CircuitCnf {
  CnfFormula formula;  // F_N ∧ z; the output unit is the last clause
  // Half-open clause index range per gate, aligned with Circuit::gates().
  std::vector<std::pair<uint32_t, uint32_t>> gate_clause_ranges;
  uint32_t output_unit_index;

  // F_N without the output unit.
  CnfFormula body() const;
  // F_N with the clauses of the given gates removed (no output unit).
  CnfFormula body_without_gates(const std::vector<uint32_t>& gate_ids) const;
};

// F_N ∧ z over the circuit's signal table: consistency clauses for each of
// the eight gate kinds plus the unit clause asserting the output.
CnfFormula tseitin_encode(const Circuit& n);

CircuitCnf tseitin_encode_detailed(const Circuit& n);

}  // namespace pct
