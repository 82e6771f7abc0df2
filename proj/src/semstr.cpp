#include "pct/semstr.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pct/dimacs.hpp"

namespace pct {

namespace {

void validate_v_set(const CnfFormula& g, const std::vector<Var>& v_set, const char* who) {
  if (v_set.empty()) throw ValidationError(std::string(who) + ": v_set must be nonempty");
  for (size_t i = 0; i < v_set.size(); ++i) {
    if (v_set[i] >= g.num_vars())
      throw ValidationError(std::string(who) + ": v_set names an undeclared variable");
    if (i > 0 && v_set[i] <= v_set[i - 1])
      throw ValidationError(std::string(who) + ": v_set must be strictly ascending");
  }
}

VarTable local_table(const CnfFormula& g, const std::vector<Var>& v_set) {
  VarTable t;
  for (Var v : v_set) t.add(g.vars().name(v), g.vars().role(v));
  return t;
}

// Single destructive pass: drop core members whose removal keeps the
// remaining conjunction unsatisfiable.
std::vector<uint32_t> shrink(const CnfFormula& reduced, std::vector<uint32_t> core,
                             uint64_t seed, const SolverLimits& limits) {
  for (size_t k = 0; k < core.size();) {
    std::vector<uint32_t> rest;
    for (size_t j = 0; j < core.size(); ++j)
      if (j != k) rest.push_back(core[j]);
    CnfFormula sub(reduced.vars());
    for (uint32_t ci : rest) sub.add_clause(reduced.clause(ci));
    SatResult r = solve(sub, seed, limits);
    if (r.is_sat()) {
      ++k;
    } else {
      std::vector<uint32_t> next;
      for (uint32_t ci : r.core()) next.push_back(rest[ci]);
      core = std::move(next);
      std::sort(core.begin(), core.end());
    }
  }
  return core;
}

}  // namespace

GenClsResult gen_cls(const CnfFormula& g, const std::vector<Var>& v_set, const Assignment& v,
                     uint64_t seed, const SolverLimits& limits, bool shrink_core) {
  validate_v_set(g, v_set, "gen_cls");
  if (v.domain != v_set)
    throw ValidationError("gen_cls: assignment domain must be exactly v_set");

  CofactorResult cof = cofactor(g, v);
  SatResult res = solve(cof.reduced, seed, limits);

  if (res.is_sat()) {
    Bits bits(g.num_vars());
    for (uint32_t i = 0; i < v.domain.size(); ++i) bits.set(v.domain[i], v.bits.get(i));
    for (uint32_t i = 0; i < cof.var_map.size(); ++i)
      bits.set(cof.var_map[i], res.model().bits.get(i));
    return {std::nullopt, Assignment::full(g.num_vars(), std::move(bits))};
  }

  std::vector<uint32_t> core = res.core();
  if (shrink_core) core = shrink(cof.reduced, std::move(core), seed, limits);

  // V' = variables of v_set whose literal was removed from a core parent.
  std::unordered_set<Var> vprime;
  for (uint32_t ri : core)
    for (Lit l : g.clause(cof.parent_map[ri]).lits())
      if (v.has(l.var())) vprime.insert(l.var());

  std::vector<Lit> lits;
  for (Var w : v_set)
    if (vprime.count(w)) lits.push_back(Lit::make(w, v.value(w)));
  return {Clause(std::move(lits)), std::nullopt};
}

SemStrResult sem_str(const CnfFormula& g, const std::vector<Var>& v_set, uint64_t seed,
                     const std::optional<Assignment>& center, const SemStrLimits& limits,
                     bool shrink_core) {
  validate_v_set(g, v_set, "sem_str");

  CnfFormula h(local_table(g, v_set));
  const uint32_t width = static_cast<uint32_t>(v_set.size());

  Bits center_bits(width);
  if (center) {
    if (center->domain != v_set)
      throw ValidationError("sem_str: center domain must be exactly v_set");
    center_bits = center->bits;
  }
  Assignment p_init = Assignment::full(width, center_bits);

  for (uint64_t iter = 0;; ++iter) {
    if (iter >= limits.max_iterations)
      throw BudgetExceededError("semstr", "iteration budget exceeded");

    BuildSsaResult step = build_ssa(h, p_init, seed, limits.ssa);
    if (step.ssa) {
      SsaCheck chk = check_ssa(h, *step.ssa);
      if (!chk.ok) throw Error("internal: BuildSSA produced an invalid SSA: " + chk.reason);
      return {Projection{std::move(h), std::move(*step.ssa), g.content_hash(), v_set},
              std::nullopt};
    }

    // h is satisfiable; lift the model to g's variable space.
    Assignment v_local = std::move(*step.model);
    Assignment v_g(v_set, v_local.bits);
    GenClsResult gc = gen_cls(g, v_set, v_g, seed, limits.solver, shrink_core);
    if (gc.model) return {std::nullopt, std::move(gc.model)};

    // Map the clause into h's local numbering and require progress.
    std::vector<Lit> lits;
    for (Lit l : gc.clause->lits()) {
      auto pos = v_g.position(l.var());
      lits.push_back(Lit::make(*pos, l.negated()));
    }
    Clause local(std::move(lits));
    if (clause_satisfied(local, v_local))
      throw Error("internal: GenCls returned a clause not falsified by the current model");
    h.add_clause(std::move(local));
  }
}

ProjectionCheck verify_projection(const CnfFormula& g, const Projection& p, uint64_t seed,
                                  const SolverLimits& limits) {
  ProjectionCheck out;
  if (p.source_id != g.content_hash()) {
    out.reason = "projection was produced from a different source formula";
    return out;
  }
  try {
    validate_v_set(g, p.v_set, "verify_projection");
  } catch (const ValidationError& e) {
    out.reason = e.what();
    return out;
  }
  if (p.h.num_vars() != p.v_set.size()) {
    out.reason = "projection formula table does not match v_set";
    return out;
  }
  if (p.ssa.formula_id != p.h.content_hash()) {
    out.reason = "SSA was built for a different formula";
    return out;
  }
  SsaCheck chk = check_ssa(p.h, p.ssa);
  if (!chk.ok) {
    out.reason = "SSA check failed: " + chk.reason;
    return out;
  }
  for (uint32_t i = 0; i < p.h.num_clauses(); ++i) {
    CnfFormula query = g;
    for (Lit l : p.h.clause(i).lits())
      query.add_clause(Clause{Lit::make(p.v_set[l.var()], !l.negated())});
    if (solve(query, seed, limits).is_sat()) {
      out.reason = "clause " + std::to_string(i) + " of h is not implied by g";
      out.failing_clause = i;
      return out;
    }
  }
  out.ok = true;
  return out;
}

std::string serialize_projection(const CnfFormula& h, const Ssa& ssa) {
  return to_dimacs(h) + serialize_ssa(ssa);
}

ParsedProjection parse_projection(const std::string& text) {
  size_t at = text.find("\ncenter ");
  if (at == std::string::npos)
    throw ParseError("projection must contain a DIMACS section followed by an SSA block", 1);
  ParsedProjection p;
  p.h = from_dimacs(text.substr(0, at + 1));
  p.ssa = parse_ssa(text.substr(at + 1));
  return p;
}

}  // namespace pct
