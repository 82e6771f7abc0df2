#include "pct/cnf.hpp"

#include <algorithm>

namespace pct {

const char* to_string(VarRole r) {
  switch (r) {
    case VarRole::Input: return "input";
    case VarRole::Internal: return "internal";
    case VarRole::Output: return "output";
  }
  return "?";
}

Var VarTable::add(std::string name, VarRole role) {
  if (index_.count(name))
    throw ValidationError("variable '" + name + "' declared twice");
  Var v = size();
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  roles_.push_back(role);
  return v;
}

std::optional<Var> VarTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Var> VarTable::inputs() const {
  std::vector<Var> out;
  for (Var v = 0; v < size(); ++v)
    if (roles_[v] == VarRole::Input) out.push_back(v);
  return out;
}

std::optional<Var> VarTable::output() const {
  for (Var v = 0; v < size(); ++v)
    if (roles_[v] == VarRole::Output) return v;
  return std::nullopt;
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var())
      throw ValidationError("tautological clause rejected (variable " +
                            std::to_string(lits_[i].var()) + " in both polarities)");
}

bool Clause::contains_var(Var v) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), Lit::pos(v));
  return it != lits_.end() && it->var() == v;
}

Assignment::Assignment(std::vector<Var> dom, Bits b) : domain(std::move(dom)), bits(std::move(b)) {
  if (domain.size() != bits.width())
    throw ValidationError("assignment width does not match its domain");
  for (size_t i = 1; i < domain.size(); ++i)
    if (domain[i] <= domain[i - 1])
      throw ValidationError("assignment domain must be strictly ascending");
}

Assignment Assignment::full(uint32_t n, Bits b) {
  std::vector<Var> dom(n);
  for (uint32_t i = 0; i < n; ++i) dom[i] = i;
  return Assignment(std::move(dom), std::move(b));
}

Assignment Assignment::zeros_over(std::vector<Var> dom) {
  Bits b(static_cast<uint32_t>(dom.size()));
  return Assignment(std::move(dom), std::move(b));
}

std::optional<uint32_t> Assignment::position(Var v) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), v);
  if (it == domain.end() || *it != v) return std::nullopt;
  return static_cast<uint32_t>(it - domain.begin());
}

bool Assignment::value(Var v) const {
  auto pos = position(v);
  if (!pos) throw ValidationError("variable " + std::to_string(v) + " not in assignment domain");
  return bits.get(*pos);
}

void Assignment::set(Var v, bool val) {
  auto pos = position(v);
  if (!pos) throw ValidationError("variable " + std::to_string(v) + " not in assignment domain");
  bits.set(*pos, val);
}

uint32_t CnfFormula::add_clause(Clause c) {
  for (Lit l : c.lits())
    if (l.var() >= num_vars())
      throw ValidationError("clause literal over undeclared variable " + std::to_string(l.var()));
  clauses_.push_back(std::move(c));
  return num_clauses() - 1;
}

uint64_t CnfFormula::content_hash() const {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto eat = [&h](uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  eat(num_vars());
  eat(num_clauses());
  for (const Clause& c : clauses_) {
    eat(c.size());
    for (Lit l : c.lits()) eat(l.code());
  }
  return h;
}

bool CnfFormula::satisfied_by(const Bits& full) const {
  for (const Clause& c : clauses_) {
    bool sat = false;
    for (Lit l : c.lits())
      if (l.satisfied_by(full.get(l.var()))) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

bool clause_satisfied(const Clause& c, const Assignment& p) {
  for (Lit l : c.lits())
    if (l.satisfied_by(p.value(l.var()))) return true;
  return false;
}

uint32_t hamming(const Assignment& p, const Assignment& q) {
  if (p.domain != q.domain)
    throw ValidationError("hamming distance requires equal domains");
  return p.bits.hamming(q.bits);
}

std::vector<Assignment> nbhd(const Assignment& p, const Clause& c) {
  if (clause_satisfied(c, p))
    throw ValidationError("nbhd requires an assignment falsifying the clause");
  std::vector<Assignment> out;
  out.reserve(c.size());
  for (Lit l : c.lits()) {
    Assignment q = p;
    q.bits.flip(*p.position(l.var()));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Assignment> nbhd_directed(const Assignment& q, const Assignment& p,
                                      const Clause& c) {
  if (p.domain != q.domain)
    throw ValidationError("nbhd_directed requires equal domains for q and p");
  std::vector<Assignment> all = nbhd(p, c);
  std::vector<Assignment> out;
  for (auto& a : all)
    if (a.bits.hamming(q.bits) > p.bits.hamming(q.bits)) out.push_back(std::move(a));
  return out;
}

std::vector<uint32_t> falsified_clauses(const CnfFormula& h, const Assignment& p) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < h.num_clauses(); ++i)
    if (!clause_satisfied(h.clause(i), p)) out.push_back(i);
  return out;
}

CofactorResult cofactor(const CnfFormula& g, const Assignment& v) {
  for (Var w : v.domain)
    if (w >= g.num_vars())
      throw ValidationError("cofactor assignment mentions undeclared variable");

  CofactorResult res;
  VarTable vars;
  std::vector<int64_t> remap(g.num_vars(), -1);
  for (Var w = 0; w < g.num_vars(); ++w) {
    if (v.has(w)) continue;
    remap[w] = vars.add(g.vars().name(w), g.vars().role(w));
    res.var_map.push_back(w);
  }
  res.reduced = CnfFormula(std::move(vars));

  for (uint32_t i = 0; i < g.num_clauses(); ++i) {
    const Clause& c = g.clause(i);
    bool satisfied = false;
    std::vector<Lit> kept;
    for (Lit l : c.lits()) {
      auto pos = v.position(l.var());
      if (pos) {
        if (l.satisfied_by(v.bits.get(*pos))) {
          satisfied = true;
          break;
        }
        // falsified literal: drop
      } else {
        kept.push_back(Lit::make(static_cast<Var>(remap[l.var()]), l.negated()));
      }
    }
    if (satisfied) continue;
    res.reduced.add_clause(Clause(std::move(kept)));
    res.parent_map.push_back(i);
  }
  return res;
}

}  // namespace pct
