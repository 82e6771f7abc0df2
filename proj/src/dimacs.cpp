#include "pct/dimacs.hpp"

#include <sstream>
#include <vector>

namespace pct {

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  for (Var v = 0; v < f.num_vars(); ++v)
    out << "c var " << f.vars().name(v) << " " << (v + 1) << " "
        << to_string(f.vars().role(v)) << "\n";
  out << "p cnf " << f.num_vars() << " " << f.num_clauses() << "\n";
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.lits()) out << (l.negated() ? "-" : "") << (l.var() + 1) << " ";
    out << "0\n";
  }
  return out.str();
}

CnfFormula from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;

  struct NamedVar {
    std::string name;
    VarRole role;
  };
  std::vector<std::pair<uint64_t, NamedVar>> declared;
  uint64_t nvars = 0, nclauses = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") {
      std::string kw;
      if (ss >> kw && kw == "var") {
        NamedVar nv;
        uint64_t idx;
        std::string role;
        if (!(ss >> nv.name >> idx >> role) || idx == 0)
          throw ParseError("malformed 'c var' line", lineno);
        nv.role = role == "input" ? VarRole::Input
                : role == "output" ? VarRole::Output
                                   : VarRole::Internal;
        declared.push_back({idx, nv});
      }
      continue;
    }
    if (tok != "p") throw ParseError("expected 'p cnf' header before clauses", lineno);
    std::string fmt;
    if (!(ss >> fmt >> nvars >> nclauses) || fmt != "cnf")
      throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", lineno);
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError("missing 'p cnf' header", lineno ? lineno : 1);

  VarTable vars;
  {
    std::vector<const NamedVar*> by_index(nvars, nullptr);
    for (auto& [idx, nv] : declared) {
      if (idx > nvars) throw ParseError("'c var' index " + std::to_string(idx) + " out of range", 1);
      by_index[idx - 1] = &nv;
    }
    for (uint64_t i = 0; i < nvars; ++i) {
      if (by_index[i])
        vars.add(by_index[i]->name, by_index[i]->role);
      else
        vars.add("v" + std::to_string(i + 1), VarRole::Internal);
    }
  }

  CnfFormula f(std::move(vars));
  std::vector<Lit> lits;
  int64_t x;
  uint64_t seen = 0;
  while (in >> x) {
    if (x == 0) {
      f.add_clause(Clause(lits));
      lits.clear();
      ++seen;
      continue;
    }
    uint64_t v = static_cast<uint64_t>(x < 0 ? -x : x);
    if (v > nvars)
      throw ParseError("literal " + std::to_string(x) + " out of range (" +
                           std::to_string(nvars) + " variables)", lineno);
    lits.push_back(Lit::make(static_cast<Var>(v - 1), x < 0));
  }
  if (!lits.empty()) throw ParseError("clause not terminated by 0", lineno);
  if (seen != nclauses)
    throw ParseError("clause count mismatch: header says " + std::to_string(nclauses) +
                         ", found " + std::to_string(seen), lineno);
  return f;
}

}  // namespace pct
