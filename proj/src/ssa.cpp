#include "pct/ssa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pct {

namespace {

void require_full_domain(const CnfFormula& h, const Assignment& a, const char* who) {
  if (a.domain.size() != h.num_vars())
    throw ValidationError(std::string(who) + ": assignment domain must be all formula variables");
  for (uint32_t i = 0; i < a.domain.size(); ++i)
    if (a.domain[i] != i)
      throw ValidationError(std::string(who) + ": assignment domain must be all formula variables");
}

std::vector<uint32_t> falsified_bits(const CnfFormula& h, const Bits& p) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < h.num_clauses(); ++i) {
    bool sat = false;
    for (Lit l : h.clause(i).lits())
      if (l.satisfied_by(p.get(l.var()))) {
        sat = true;
        break;
      }
    if (!sat) out.push_back(i);
  }
  return out;
}

// Variables of c whose flip moves p away from the center: exactly those
// where p agrees with the center.
std::vector<Var> directed_flip_vars(const Bits& center, const Bits& p, const Clause& c) {
  std::vector<Var> out;
  for (Lit l : c.lits())
    if (p.get(l.var()) == center.get(l.var())) out.push_back(l.var());
  return out;
}

}  // namespace

std::vector<Assignment> build_path(const CnfFormula& h, const Assignment& p_init,
                                   const Assignment& s, const ClauseChoiceRule& rule) {
  require_full_domain(h, p_init, "build_path");
  require_full_domain(h, s, "build_path");
  if (!h.satisfied_by(s.bits))
    throw ValidationError("build_path: target assignment does not satisfy the formula");

  std::vector<Assignment> path;
  Bits cur = p_init.bits;
  path.push_back(Assignment::full(h.num_vars(), cur));
  while (cur != s.bits) {
    std::vector<uint32_t> falsified = falsified_bits(h, cur);
    Var flip = UINT32_MAX;
    if (!falsified.empty()) {
      uint32_t ci = rule ? rule(h, cur, falsified) : falsified.front();
      if (std::find(falsified.begin(), falsified.end(), ci) == falsified.end())
        throw ValidationError("build_path: choice rule returned a clause not falsified");
      // s satisfies the clause while cur falsifies it, so they must differ
      // on one of its variables; take the lowest.
      for (Lit l : h.clause(ci).lits())
        if (cur.get(l.var()) != s.bits.get(l.var())) {
          flip = l.var();
          break;
        }
      assert(flip != UINT32_MAX);
    } else {
      // cur satisfies h but is not s (s was not a nearest model); keep
      // moving toward s on the lowest differing variable.
      for (Var v = 0; v < h.num_vars(); ++v)
        if (cur.get(v) != s.bits.get(v)) {
          flip = v;
          break;
        }
    }
    cur.flip(flip);
    path.push_back(Assignment::full(h.num_vars(), cur));
  }
  return path;
}

BuildSsaResult build_ssa(const CnfFormula& h, uint64_t seed, const SsaLimits& limits) {
  return build_ssa(h, Assignment::full(h.num_vars(), Bits(h.num_vars())), seed, limits);
}

BuildSsaResult build_ssa(const CnfFormula& h, const Assignment& p_init,
                         [[maybe_unused]] uint64_t seed, const SsaLimits& limits) {
  require_full_domain(h, p_init, "build_ssa");
  const Bits center = p_init.bits;

  std::deque<Bits> queue{center};
  std::unordered_set<Bits, BitsHash> seen{center};   // queued or examined
  std::unordered_set<Bits, BitsHash> examined;
  Ssa ssa;
  ssa.width = h.num_vars();
  ssa.formula_id = h.content_hash();

  while (!queue.empty()) {
    Bits p = std::move(queue.front());
    queue.pop_front();

    std::vector<uint32_t> falsified = falsified_bits(h, p);
    if (falsified.empty())
      return {std::nullopt, Assignment::full(h.num_vars(), p)};

    // Pick the falsified clause contributing the fewest unexamined
    // directed neighbors; ties go to the lowest clause index.
    uint32_t best = falsified.front();
    size_t best_count = SIZE_MAX;
    for (uint32_t ci : falsified) {
      size_t count = 0;
      for (Var v : directed_flip_vars(center, p, h.clause(ci)))
        if (!examined.count(p.flipped(v))) ++count;
      if (count < best_count) {
        best_count = count;
        best = ci;
      }
    }

    for (Var v : directed_flip_vars(center, p, h.clause(best))) {
      Bits q = p.flipped(v);
      if (seen.insert(q).second) {
        queue.push_back(q);
        if (seen.size() > limits.max_states)
          throw BudgetExceededError("ssa", "state budget of " +
                                               std::to_string(limits.max_states) + " exceeded");
      }
    }

    examined.insert(p);
    ssa.points.push_back(std::move(p));
    ssa.clause_of.push_back(best);
  }
  return {std::move(ssa), std::nullopt};
}

SsaCheck check_ssa(const CnfFormula& h, const Ssa& cand, bool uncentered) {
  SsaCheck res;
  if (cand.points.empty()) {
    res.reason = "empty assignment set (the center must be a member)";
    return res;
  }
  if (cand.width != h.num_vars()) {
    res.reason = "assignment width does not match the formula";
    return res;
  }
  if (cand.clause_of.size() != cand.points.size()) {
    res.reason = "AC-mapping must assign a clause to every point";
    return res;
  }

  std::unordered_set<Bits, BitsHash> members(cand.points.begin(), cand.points.end());
  const Bits& center = cand.center();

  for (size_t i = 0; i < cand.points.size(); ++i) {
    const Bits& p = cand.points[i];
    uint32_t ci = cand.clause_of[i];
    if (ci >= h.num_clauses()) {
      res.reason = "AC-mapping refers to clause " + std::to_string(ci) + " which does not exist";
      res.offending_point = p;
      return res;
    }
    const Clause& c = h.clause(ci);
    for (Lit l : c.lits())
      if (l.satisfied_by(p.get(l.var()))) {
        res.reason = "point does not falsify its mapped clause";
        res.offending_point = p;
        res.offending_clause = ci;
        return res;
      }
    for (Lit l : c.lits()) {
      if (!uncentered && p.get(l.var()) != center.get(l.var())) continue;
      Bits q = p.flipped(l.var());
      if (!members.count(q)) {
        res.reason = "directed neighborhood leaves the set";
        res.offending_point = p;
        res.offending_clause = ci;
        res.missing_neighbor = q;
        return res;
      }
    }
  }
  res.ok = true;
  return res;
}

namespace {

// Lazy greatest-fixed-point search: a point is alive iff some falsified
// clause keeps its whole center-directed neighborhood alive inside the
// allowed region. Distance from the center strictly grows along directed
// edges, so the recursion is acyclic and memoization is sound.
class RestrictedSearch {
public:
  RestrictedSearch(const CnfFormula& h, const std::function<bool(const Bits&)>& allowed,
                   uint64_t budget)
      : h_(h), allowed_(allowed), budget_(budget) {}

  std::optional<Ssa> try_center(const Bits& center) {
    center_ = center;
    status_.clear();
    choice_.clear();
    if (!alive(center)) return std::nullopt;

    Ssa ssa;
    ssa.width = h_.num_vars();
    ssa.formula_id = h_.content_hash();
    std::deque<Bits> queue{center};
    std::unordered_set<Bits, BitsHash> enqueued{center};
    while (!queue.empty()) {
      Bits p = std::move(queue.front());
      queue.pop_front();
      uint32_t ci = choice_.at(p);
      for (Var v : directed_flip_vars(center_, p, h_.clause(ci))) {
        Bits q = p.flipped(v);
        if (enqueued.insert(q).second) queue.push_back(q);
      }
      ssa.points.push_back(std::move(p));
      ssa.clause_of.push_back(ci);
    }
    assert(check_ssa(h_, ssa).ok);
    return ssa;
  }

private:
  enum class Status : uint8_t { InProgress, Alive, Dead };

  bool alive(const Bits& p) {
    auto it = status_.find(p);
    if (it != status_.end()) {
      assert(it->second != Status::InProgress);
      return it->second == Status::Alive;
    }
    if (status_.size() >= budget_)
      throw BudgetExceededError("ssa-search", "node budget of " + std::to_string(budget_) +
                                                  " exceeded; verdict inconclusive");
    status_.emplace(p, Status::InProgress);

    bool ok = false;
    if (allowed_(p)) {
      std::vector<uint32_t> falsified = falsified_bits(h_, p);
      // Fail-fast order: fewest out-of-allowed directed neighbors first.
      std::vector<std::pair<size_t, uint32_t>> order;
      for (uint32_t ci : falsified) {
        size_t out = 0;
        for (Var v : directed_flip_vars(center_, p, h_.clause(ci)))
          if (!allowed_(p.flipped(v))) ++out;
        order.push_back({out, ci});
      }
      std::sort(order.begin(), order.end());
      for (auto& [out, ci] : order) {
        bool all_alive = true;
        for (Var v : directed_flip_vars(center_, p, h_.clause(ci))) {
          if (!alive(p.flipped(v))) {
            all_alive = false;
            break;
          }
        }
        if (all_alive) {
          choice_[p] = ci;
          ok = true;
          break;
        }
      }
    }
    status_[p] = ok ? Status::Alive : Status::Dead;
    return ok;
  }

  const CnfFormula& h_;
  const std::function<bool(const Bits&)>& allowed_;
  uint64_t budget_;
  Bits center_;
  std::unordered_map<Bits, Status, BitsHash> status_;
  std::unordered_map<Bits, uint32_t, BitsHash> choice_;
};

}  // namespace

std::optional<Ssa> find_ssa_within(const CnfFormula& h,
                                   const std::function<bool(const Bits&)>& allowed,
                                   const std::vector<Bits>& centers, uint64_t node_budget) {
  RestrictedSearch search(h, allowed, node_budget);
  for (const Bits& c : centers) {
    if (c.width() != h.num_vars())
      throw ValidationError("find_ssa_within: center width does not match the formula");
    if (auto ssa = search.try_center(c)) return ssa;
  }
  return std::nullopt;
}

std::optional<Ssa> find_ssa_within(const CnfFormula& h,
                                   const std::vector<Assignment>& allowed,
                                   const std::vector<Assignment>& centers,
                                   uint64_t node_budget) {
  std::unordered_set<Bits, BitsHash> allowed_set;
  for (const Assignment& a : allowed) {
    require_full_domain(h, a, "find_ssa_within");
    allowed_set.insert(a.bits);
  }
  std::vector<Bits> center_bits;
  for (const Assignment& c : centers) {
    require_full_domain(h, c, "find_ssa_within");
    center_bits.push_back(c.bits);
  }
  std::function<bool(const Bits&)> pred = [&allowed_set](const Bits& b) {
    return allowed_set.count(b) != 0;
  };
  return find_ssa_within(h, pred, center_bits, node_budget);
}

std::string serialize_ssa(const Ssa& s) {
  std::ostringstream out;
  out << "center " << s.center().to_string() << "\n";
  for (size_t i = 0; i < s.points.size(); ++i)
    out << s.points[i].to_string() << " " << s.clause_of[i] << "\n";
  return out.str();
}

Ssa parse_ssa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  Bits center;
  bool have_center = false;
  Ssa ssa;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!have_center) {
      if (first != "center") throw ParseError("expected 'center <bits>'", lineno);
      std::string bits;
      if (!(ss >> bits) || !Bits::from_string(bits, center))
        throw ParseError("malformed center bits", lineno);
      have_center = true;
      ssa.width = center.width();
      continue;
    }
    Bits b;
    uint32_t ci;
    if (!Bits::from_string(first, b) || b.width() != ssa.width || !(ss >> ci))
      throw ParseError("expected '<bits> <clause-index>'", lineno);
    ssa.points.push_back(b);
    ssa.clause_of.push_back(ci);
  }
  if (!have_center) throw ParseError("missing center line", lineno ? lineno : 1);
  if (ssa.points.empty() || ssa.points[0] != center)
    throw ParseError("the center must be the first listed assignment", lineno);
  return ssa;
}

}  // namespace pct
