#pragma once

#include <cstdint>
#include <vector>

#include "pct/cnf.hpp"

namespace pct {

struct SolverLimits {
  uint64_t max_conflicts = 1'000'000;
};

// Either a satisfying model (full over the formula's variables) or an
// unsatisfiable core: original clause indices, ascending, whose conjunction
// is itself unsatisfiable.
class SatResult {
public:
  static SatResult sat(Assignment model) {
    SatResult r;
    r.sat_ = true;
    r.model_ = std::move(model);
    return r;
  }
  static SatResult unsat(std::vector<uint32_t> core) {
    SatResult r;
    r.sat_ = false;
    r.core_ = std::move(core);
    return r;
  }

  bool is_sat() const { return sat_; }
  const Assignment& model() const {
    if (!sat_) throw Error("SatResult: no model, the formula is unsat");
    return model_;
  }
  const std::vector<uint32_t>& core() const {
    if (sat_) throw Error("SatResult: no core, the formula is sat");
    return core_;
  }

private:
  SatResult() = default;
  bool sat_ = false;
  Assignment model_;
  std::vector<uint32_t> core_;
};

// Complete decision with core extraction. Every input clause is guarded by
// a fresh selector assumption; on unsat the final conflict over selectors
// is the reported core. Deterministic for a fixed (formula, seed). Throws
// BudgetExceededError when the conflict budget runs out.
SatResult solve(const CnfFormula& f, uint64_t seed = 0, const SolverLimits& limits = {});

struct ExtendedSatResult {
  SatResult result;
  // Parallel to result.core(): whether the core clause lost a literal of
  // domain(v) under cofactoring.
  std::vector<bool> core_lost_assumption_literal;
};

// Decides f ∧ v by solving the cofactor f|v. A sat model extends v; an
// unsat core refers to f's original clause indices.
ExtendedSatResult solve_extended(const CnfFormula& f, const Assignment& v,
                                 uint64_t seed = 0, const SolverLimits& limits = {});

}  // namespace pct
