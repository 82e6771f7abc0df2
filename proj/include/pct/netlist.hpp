#pragma once

#include <string>

#include "pct/circuit.hpp"

namespace pct {

// Line-oriented netlist grammar:
//   INPUT <name>
//   <name> = <KIND>(<arg>, <arg>, ...)
//   OUTPUT <name>          (exactly once)
//   # comment
// Names match [A-Za-z_][A-Za-z0-9_]*; KIND is one of AND OR NAND NOR XOR
// XNOR NOT BUF. Gates may be declared in any order; the result is
// topologically sorted and validated.
Circuit parse_netlist(const std::string& text, const std::string& name = "circuit");

// Inverse of parse_netlist up to gate ordering (emits topological order).
std::string write_netlist(const Circuit& n);

// ASCII AIGER, combinational subset: header "aag M I L O A" with L = 0 and
// O = 1. Inverted edges are materialized as NOT gates, one per inverted
// variable. Inputs are named i1..iI, AND gates a<var>, inverters n<var>.
Circuit parse_aiger_ascii(const std::string& text, const std::string& name = "circuit");

}  // namespace pct
