#pragma once

#include <optional>

#include "pct/cnf.hpp"
#include "pct/sat.hpp"
#include "pct/ssa.hpp"

namespace pct {

// Formula h(V) implied by a source formula, certified unsatisfiable by its
// SSA. Existence of a valid Projection proves the source unsatisfiable.
struct Projection {
  CnfFormula h;             // over a local table mirroring v_set
  Ssa ssa;                  // SSA of h
  uint64_t source_id = 0;   // content hash of the source formula
  std::vector<Var> v_set;   // ascending source-formula variables
};

struct SemStrLimits {
  SolverLimits solver;
  SsaLimits ssa;
  uint64_t max_iterations = uint64_t{1} << 32;
};

struct GenClsResult {
  std::optional<Clause> clause;     // over source-formula variables
  std::optional<Assignment> model;  // full model of g extending v
};

// One refinement step: decide g under v. Sat gives a model extending v.
// Unsat turns the proof core into a clause over v_set that is implied by g
// and falsified by v: a variable enters the clause iff some core clause's
// parent in g lost one of its literals under the cofactoring by v.
// shrink_core enables a single destructive core-minimization pass.
GenClsResult gen_cls(const CnfFormula& g, const std::vector<Var>& v_set,
                     const Assignment& v, uint64_t seed = 0,
                     const SolverLimits& limits = {}, bool shrink_core = false);

struct SemStrResult {
  std::optional<Projection> projection;  // g is unsatisfiable
  std::optional<Assignment> model;       // g is satisfiable
};

// The hybrid prover: alternate BuildSSA on the growing h with GenCls on g
// until either h gets an SSA (g unsat, projection returned) or a model of g
// appears. Each added clause is falsified by the model that produced it, so
// the loop strictly shrinks the space of candidate models of h.
SemStrResult sem_str(const CnfFormula& g, const std::vector<Var>& v_set,
                     uint64_t seed = 0,
                     const std::optional<Assignment>& center = std::nullopt,
                     const SemStrLimits& limits = {}, bool shrink_core = false);

struct ProjectionCheck {
  bool ok = false;
  std::string reason;
  std::optional<uint32_t> failing_clause;  // index into p.h when implication fails
};

// Re-derives the module invariants: the SSA certifies h, and every clause
// of h is implied by g (g ∧ ¬C unsatisfiable, checked clause by clause).
ProjectionCheck verify_projection(const CnfFormula& g, const Projection& p,
                                  uint64_t seed = 0, const SolverLimits& limits = {});

// DIMACS of h followed by the SSA text block.
std::string serialize_projection(const CnfFormula& h, const Ssa& ssa);
struct ParsedProjection {
  CnfFormula h;
  Ssa ssa;
};
ParsedProjection parse_projection(const std::string& text);

}  // namespace pct
