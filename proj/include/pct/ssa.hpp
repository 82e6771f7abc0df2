#pragma once

#include <functional>
#include <optional>
#include <string>

#include "pct/cnf.hpp"

namespace pct {

struct SsaLimits {
  uint64_t max_states = uint64_t{1} << 26;
};

// Stable Set of Assignments over the full variable set of a formula:
// every point falsifies its mapped clause, the center is the first point,
// and each point's center-directed neighborhood stays inside the set.
struct Ssa {
  uint32_t width = 0;
  std::vector<Bits> points;         // discovery order; points[0] is the center
  std::vector<uint32_t> clause_of;  // AC-mapping, parallel to points
  uint64_t formula_id = 0;          // content hash of the certified formula

  const Bits& center() const { return points.at(0); }
  size_t size() const { return points.size(); }
};

struct BuildSsaResult {
  std::optional<Ssa> ssa;        // set when the formula is unsatisfiable
  std::optional<Assignment> model;  // satisfying assignment otherwise
};

// Chooses one of the falsified clause indices for the current point.
using ClauseChoiceRule = std::function<uint32_t(
    const CnfFormula& h, const Bits& p, const std::vector<uint32_t>& falsified)>;

// Walk from p_init to a satisfying assignment s, flipping one variable of a
// falsified clause toward s per step. The path has hamming(p_init, s) + 1
// points for any choice rule. Throws if s does not satisfy h.
std::vector<Assignment> build_path(const CnfFormula& h, const Assignment& p_init,
                                   const Assignment& s,
                                   const ClauseChoiceRule& rule = {});

// Breadth-first SSA construction from the given center; on a satisfiable
// formula returns the first examined satisfying assignment instead. The
// clause choice greedily minimizes the new frontier, ties to the lowest
// clause index. The seed parameter is accepted for interface stability;
// the search itself is deterministic.
BuildSsaResult build_ssa(const CnfFormula& h, const Assignment& p_init,
                         uint64_t seed = 0, const SsaLimits& limits = {});

// Center defaults to the all-zeros assignment.
BuildSsaResult build_ssa(const CnfFormula& h, uint64_t seed = 0,
                         const SsaLimits& limits = {});

struct SsaCheck {
  bool ok = false;
  std::string reason;
  std::optional<Bits> offending_point;
  std::optional<uint32_t> offending_clause;
  std::optional<Bits> missing_neighbor;
};

// Validates the three SSA invariants; with uncentered = true the undirected
// neighborhood must be contained instead.
SsaCheck check_ssa(const CnfFormula& h, const Ssa& cand, bool uncentered = false);

// Searches for an SSA of h lying inside `allowed`, trying the candidate
// centers in order. Complete: returns nullopt only when no admissible
// clause choice tree exists for any candidate center. Per-point choices are
// memoized; the node budget guards pathological blowup.
std::optional<Ssa> find_ssa_within(const CnfFormula& h,
                                   const std::vector<Assignment>& allowed,
                                   const std::vector<Assignment>& centers,
                                   uint64_t node_budget = uint64_t{1} << 22);

// Predicate form for callers whose allowed set is too large to materialize.
std::optional<Ssa> find_ssa_within(const CnfFormula& h,
                                   const std::function<bool(const Bits&)>& allowed,
                                   const std::vector<Bits>& centers,
                                   uint64_t node_budget = uint64_t{1} << 22);

// Text format: "center <bits>" then one "<bits> <clause-index>" line per
// point in discovery order.
std::string serialize_ssa(const Ssa& s);
Ssa parse_ssa(const std::string& text);

}  // namespace pct
