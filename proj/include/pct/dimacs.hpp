#pragma once

#include <string>

#include "pct/cnf.hpp"

namespace pct {

// Standard DIMACS cnf with the variable table serialized as
// "c var <name> <1-based-index> <role>" comment lines before the header.
std::string to_dimacs(const CnfFormula& f);

// Accepts plain DIMACS too; variables without a comment line get synthetic
// names v<i> and role internal.
CnfFormula from_dimacs(const std::string& text);

}  // namespace pct
