#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "pct/sat.hpp"

namespace pct {

namespace {

// Conflict-driven clause learning with two-literal watching, first-UIP
// learning, phase saving and Luby restarts. Cores come from solving under
// selector assumptions and analyzing the final conflict. One instance per
// solve call; no incremental state.
class CdclSolver {
public:
  enum class Status { Sat, Unsat, Limit };

  CdclSolver(uint32_t num_vars, uint64_t seed) : nvars_(num_vars) {
    assigns_.assign(nvars_, kUndef);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, -1);
    activity_.assign(nvars_, 0.0);
    phase_neg_.assign(nvars_, 1);
    eligible_.assign(nvars_, 1);
    seen_.assign(nvars_, 0);
    heap_pos_.assign(nvars_, -1);
    watches_.assign(size_t{2} * nvars_, {});
    if (seed != 0) {
      uint64_t s = seed;
      for (uint32_t v = 0; v < nvars_; ++v) activity_[v] = 1e-9 * (splitmix(s) % 1024);
    }
  }

  void set_decision_eligible(uint32_t v, bool e) { eligible_[v] = e; }

  void add_clause(std::vector<uint32_t> lits) {
    assert(!lits.empty());
    if (lits.size() == 1) {
      unit_facts_.push_back(lits[0]);
      return;
    }
    uint32_t cref = static_cast<uint32_t>(clauses_.size());
    watches_[lits[0]].push_back(cref);
    watches_[lits[1]].push_back(cref);
    clauses_.push_back(std::move(lits));
  }

  Status solve(const std::vector<uint32_t>& assumptions, uint64_t max_conflicts,
               std::vector<bool>& model_out, std::vector<uint32_t>& conflict_out) {
    for (uint32_t v = 0; v < nvars_; ++v)
      if (eligible_[v]) heap_insert(v);
    for (uint32_t u : unit_facts_) {
      if (value(u) == kFalse) { conflict_out.clear(); return Status::Unsat; }
      if (value(u) == kUndef) enqueue(u, -1);
    }

    uint64_t conflicts = 0;
    uint64_t restart_count = 0;
    uint64_t restart_budget = luby(restart_count++) * 64;
    uint64_t since_restart = 0;

    for (;;) {
      int64_t confl = propagate();
      if (confl >= 0) {
        if (++conflicts > max_conflicts) return Status::Limit;
        if (decision_level() == 0) {
          // Unsatisfiable independent of any assumption.
          conflict_out.clear();
          return Status::Unsat;
        }
        std::vector<uint32_t> learnt;
        uint32_t bt = analyze(static_cast<uint32_t>(confl), learnt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          uint32_t cref = static_cast<uint32_t>(clauses_.size());
          watches_[learnt[0]].push_back(cref);
          watches_[learnt[1]].push_back(cref);
          clauses_.push_back(learnt);
          enqueue(learnt[0], static_cast<int64_t>(cref));
        }
        var_inc_ /= 0.95;
        if (var_inc_ > 1e100) rescale_activity();
        if (++since_restart >= restart_budget) {
          since_restart = 0;
          restart_budget = luby(restart_count++) * 64;
          cancel_until(0);
        }
      } else {
        uint32_t next = kLitUndef;
        while (decision_level() < assumptions.size()) {
          uint32_t a = assumptions[decision_level()];
          if (value(a) == kTrue) {
            new_decision_level();  // dummy level, already satisfied
          } else if (value(a) == kFalse) {
            analyze_final(a ^ 1, conflict_out);
            return Status::Unsat;
          } else {
            next = a;
            break;
          }
        }
        if (next == kLitUndef) {
          int64_t v = pick_branch_var();
          if (v < 0) {
            model_out.assign(nvars_, false);
            for (uint32_t w = 0; w < nvars_; ++w) model_out[w] = (assigns_[w] == kTrue);
            return Status::Sat;
          }
          next = (static_cast<uint32_t>(v) << 1) | phase_neg_[v];
        }
        new_decision_level();
        enqueue(next, -1);
      }
    }
  }

private:
  static constexpr int8_t kTrue = 1, kFalse = 0, kUndef = -1;
  static constexpr uint32_t kLitUndef = UINT32_MAX;

  static uint64_t splitmix(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static uint64_t luby(uint64_t x) {
    // 1, 1, 2, 1, 1, 2, 4, ...; x is 0-based.
    uint64_t size = 1, seq = 0;
    while (size < x + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x %= size;
    }
    return uint64_t{1} << seq;
  }

  int8_t value(uint32_t lit) const {
    int8_t a = assigns_[lit >> 1];
    if (a == kUndef) return kUndef;
    return (a == kTrue) != static_cast<bool>(lit & 1) ? kTrue : kFalse;
  }

  size_t decision_level() const { return trail_lim_.size(); }
  void new_decision_level() { trail_lim_.push_back(trail_.size()); }

  void enqueue(uint32_t lit, int64_t reason) {
    uint32_t v = lit >> 1;
    assert(assigns_[v] == kUndef);
    assigns_[v] = (lit & 1) ? kFalse : kTrue;
    level_[v] = static_cast<uint32_t>(decision_level());
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  int64_t propagate() {
    while (qhead_ < trail_.size()) {
      uint32_t p = trail_[qhead_++];
      uint32_t np = p ^ 1;  // literal that just became false
      auto& ws = watches_[np];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        uint32_t cref = ws[i++];
        auto& c = clauses_[cref];
        if (c[0] == np) std::swap(c[0], c[1]);
        assert(c[1] == np);
        if (value(c[0]) == kTrue) {
          ws[j++] = cref;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(cref);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = cref;
        if (value(c[0]) == kFalse) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return static_cast<int64_t>(cref);
        }
        enqueue(c[0], static_cast<int64_t>(cref));
      }
      ws.resize(j);
    }
    return -1;
  }

  // First UIP; returns the backtrack level, learnt[0] is the asserting lit.
  uint32_t analyze(uint32_t confl, std::vector<uint32_t>& learnt) {
    learnt.assign(1, kLitUndef);
    uint32_t path = 0;
    uint32_t p = kLitUndef;
    size_t idx = trail_.size();
    std::vector<uint32_t> to_clear;

    for (;;) {
      const auto& c = clauses_[confl];
      for (size_t k = (p == kLitUndef ? 0 : 1); k < c.size(); ++k) {
        uint32_t v = c[k] >> 1;
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          to_clear.push_back(v);
          bump(v);
          if (level_[v] == decision_level())
            ++path;
          else
            learnt.push_back(c[k]);
        }
      }
      while (!seen_[trail_[--idx] >> 1]) {}
      p = trail_[idx];
      seen_[p >> 1] = 0;
      if (--path == 0) break;
      assert(reason_[p >> 1] >= 0);
      confl = static_cast<uint32_t>(reason_[p >> 1]);
    }
    learnt[0] = p ^ 1;
    for (uint32_t v : to_clear) seen_[v] = 0;

    if (learnt.size() == 1) return 0;
    size_t max_i = 1;
    for (size_t k = 2; k < learnt.size(); ++k)
      if (level_[learnt[k] >> 1] > level_[learnt[max_i] >> 1]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    return level_[learnt[1] >> 1];
  }

  // Set of assumption literals (negated) responsible for forcing ~p false;
  // p is the negation of a failed assumption.
  void analyze_final(uint32_t p, std::vector<uint32_t>& out) {
    out.assign(1, p);
    if (decision_level() == 0) return;
    seen_[p >> 1] = 1;
    for (size_t i = trail_.size(); i-- > trail_lim_[0];) {
      uint32_t v = trail_[i] >> 1;
      if (!seen_[v]) continue;
      if (reason_[v] < 0) {
        assert(level_[v] > 0);
        out.push_back(trail_[i] ^ 1);
      } else {
        const auto& c = clauses_[static_cast<uint32_t>(reason_[v])];
        for (size_t k = 1; k < c.size(); ++k)
          if (level_[c[k] >> 1] > 0) seen_[c[k] >> 1] = 1;
      }
      seen_[v] = 0;
    }
    seen_[p >> 1] = 0;
  }

  void cancel_until(uint32_t target) {
    if (decision_level() <= target) return;
    for (size_t i = trail_.size(); i-- > trail_lim_[target];) {
      uint32_t v = trail_[i] >> 1;
      phase_neg_[v] = (trail_[i] & 1) ? 1 : 0;
      assigns_[v] = kUndef;
      reason_[v] = -1;
      if (eligible_[v]) heap_insert(v);
    }
    trail_.resize(trail_lim_[target]);
    trail_lim_.resize(target);
    qhead_ = trail_.size();
  }

  int64_t pick_branch_var() {
    while (!heap_.empty()) {
      uint32_t v = heap_pop();
      if (assigns_[v] == kUndef) return v;
    }
    return -1;
  }

  // --- VSIDS order: binary max-heap, ties broken by smaller index ----------

  bool better(uint32_t u, uint32_t v) const {
    return activity_[u] > activity_[v] || (activity_[u] == activity_[v] && u < v);
  }

  void heap_insert(uint32_t v) {
    if (heap_pos_[v] >= 0) return;
    heap_pos_[v] = static_cast<int32_t>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }

  uint32_t heap_pop() {
    uint32_t top = heap_[0];
    heap_pos_[top] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_pos_[heap_[0]] = 0;
      heap_down(0);
    }
    return top;
  }

  void heap_up(int32_t i) {
    uint32_t v = heap_[i];
    while (i > 0) {
      int32_t parent = (i - 1) / 2;
      if (!better(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }

  void heap_down(int32_t i) {
    uint32_t v = heap_[i];
    for (;;) {
      int32_t l = 2 * i + 1, r = 2 * i + 2, best = i;
      uint32_t cand = v;
      if (l < static_cast<int32_t>(heap_.size()) && better(heap_[l], cand)) {
        best = l;
        cand = heap_[l];
      }
      if (r < static_cast<int32_t>(heap_.size()) && better(heap_[r], cand)) {
        best = r;
        cand = heap_[r];
      }
      if (best == i) break;
      heap_[i] = heap_[best];
      heap_pos_[heap_[i]] = i;
      heap_[best] = v;
      heap_pos_[v] = best;
      i = best;
    }
  }

  void bump(uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) rescale_activity();
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
  }

  void rescale_activity() {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }

  uint32_t nvars_;
  std::vector<std::vector<uint32_t>> clauses_;
  std::vector<uint32_t> unit_facts_;
  std::vector<std::vector<uint32_t>> watches_;
  std::vector<int8_t> assigns_;
  std::vector<uint32_t> level_;
  std::vector<int64_t> reason_;
  std::vector<uint32_t> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<uint32_t> heap_;
  std::vector<int32_t> heap_pos_;
  std::vector<uint8_t> phase_neg_;
  std::vector<uint8_t> eligible_;
  std::vector<uint8_t> seen_;
};

}  // namespace

SatResult solve(const CnfFormula& f, uint64_t seed, const SolverLimits& limits) {
  uint32_t n = f.num_vars();
  uint32_t m = f.num_clauses();
  CdclSolver s(n + m, seed);
  for (uint32_t i = 0; i < m; ++i) {
    s.set_decision_eligible(n + i, false);
    std::vector<uint32_t> lits;
    for (Lit l : f.clause(i).lits()) lits.push_back(l.code());
    lits.push_back(((n + i) << 1) | 1);  // ¬selector_i
    s.add_clause(std::move(lits));
  }
  std::vector<uint32_t> assumptions;
  for (uint32_t i = 0; i < m; ++i) assumptions.push_back((n + i) << 1);

  std::vector<bool> model;
  std::vector<uint32_t> conflict;
  switch (s.solve(assumptions, limits.max_conflicts, model, conflict)) {
    case CdclSolver::Status::Limit:
      throw BudgetExceededError("sat", "conflict budget of " +
                                           std::to_string(limits.max_conflicts) + " exceeded");
    case CdclSolver::Status::Sat: {
      Bits bits(n);
      for (uint32_t v = 0; v < n; ++v) bits.set(v, model[v]);
      return SatResult::sat(Assignment::full(n, std::move(bits)));
    }
    case CdclSolver::Status::Unsat: {
      if (conflict.empty())
        throw Error("internal: unsat without a selector conflict");
      std::vector<uint32_t> core;
      for (uint32_t lit : conflict) {
        uint32_t v = lit >> 1;
        assert(v >= n && (lit & 1));  // conflicts are over negated selectors
        core.push_back(v - n);
      }
      std::sort(core.begin(), core.end());
      core.erase(std::unique(core.begin(), core.end()), core.end());
      return SatResult::unsat(std::move(core));
    }
  }
  throw Error("unreachable");
}

ExtendedSatResult solve_extended(const CnfFormula& f, const Assignment& v, uint64_t seed,
                                 const SolverLimits& limits) {
  CofactorResult cof = cofactor(f, v);
  SatResult reduced = solve(cof.reduced, seed, limits);

  ExtendedSatResult out{SatResult::unsat({}), {}};
  if (reduced.is_sat()) {
    Bits bits(f.num_vars());
    for (uint32_t i = 0; i < v.domain.size(); ++i) bits.set(v.domain[i], v.bits.get(i));
    const Assignment& m = reduced.model();
    for (uint32_t i = 0; i < cof.var_map.size(); ++i) bits.set(cof.var_map[i], m.bits.get(i));
    out.result = SatResult::sat(Assignment::full(f.num_vars(), std::move(bits)));
    return out;
  }

  std::vector<uint32_t> core;
  for (uint32_t ri : reduced.core()) core.push_back(cof.parent_map[ri]);
  std::sort(core.begin(), core.end());
  for (uint32_t ci : core) {
    bool lost = false;
    for (Lit l : f.clause(ci).lits())
      if (v.has(l.var())) {
        lost = true;
        break;
      }
    out.core_lost_assumption_literal.push_back(lost);
  }
  out.result = SatResult::unsat(std::move(core));
  return out;
}

}  // namespace pct
