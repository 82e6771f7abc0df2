#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pct/bits.hpp"
#include "pct/errors.hpp"

namespace pct {

using Var = uint32_t;

enum class VarRole : uint8_t { Input, Internal, Output };

const char* to_string(VarRole r);

// A literal over a VarTable variable, encoded as 2*var | negated.
class Lit {
public:
  Lit() = default;
  static Lit pos(Var v) { return Lit(v << 1); }
  static Lit neg(Var v) { return Lit((v << 1) | 1); }
  static Lit make(Var v, bool negated) { return Lit((v << 1) | (negated ? 1 : 0)); }

  Var var() const { return code_ >> 1; }
  bool negated() const { return code_ & 1; }
  Lit operator~() const { return Lit(code_ ^ 1); }

  // True iff the literal evaluates to true when its variable holds `value`.
  bool satisfied_by(bool value) const { return value != negated(); }

  uint32_t code() const { return code_; }
  bool operator==(const Lit& o) const { return code_ == o.code_; }
  bool operator!=(const Lit& o) const { return code_ != o.code_; }
  bool operator<(const Lit& o) const { return code_ < o.code_; }

private:
  explicit Lit(uint32_t code) : code_(code) {}
  uint32_t code_ = 0;
};

// Ordered bijection between signal names and CNF variable indices.
// Iteration order is declaration order and defines DIMACS numbering.
class VarTable {
public:
  Var add(std::string name, VarRole role);

  uint32_t size() const { return static_cast<uint32_t>(names_.size()); }
  const std::string& name(Var v) const { return names_.at(v); }
  VarRole role(Var v) const { return roles_.at(v); }
  std::optional<Var> find(const std::string& name) const;

  std::vector<Var> inputs() const;
  std::optional<Var> output() const;

  bool operator==(const VarTable& o) const {
    return names_ == o.names_ && roles_ == o.roles_;
  }

private:
  std::vector<std::string> names_;
  std::vector<VarRole> roles_;
  std::unordered_map<std::string, Var> index_;
};

// Disjunction of literals, canonically sorted by ascending variable index.
// Duplicate literals are merged; tautologies are rejected at construction.
class Clause {
public:
  Clause() = default;  // the empty clause
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

  static Clause empty() { return Clause(); }

  bool is_empty() const { return lits_.empty(); }
  uint32_t size() const { return static_cast<uint32_t>(lits_.size()); }
  std::span<const Lit> lits() const { return lits_; }
  bool contains_var(Var v) const;

  bool operator==(const Clause& o) const { return lits_ == o.lits_; }

private:
  std::vector<Lit> lits_;
};

// Full assignment over an ascending variable domain. bits[i] is the value
// of domain[i].
struct Assignment {
  std::vector<Var> domain;
  Bits bits;

  Assignment() = default;
  Assignment(std::vector<Var> dom, Bits b);

  // Domain 0..n-1.
  static Assignment full(uint32_t n, Bits b);
  static Assignment zeros_over(std::vector<Var> dom);

  uint32_t size() const { return static_cast<uint32_t>(domain.size()); }
  bool has(Var v) const { return position(v).has_value(); }
  std::optional<uint32_t> position(Var v) const;
  bool value(Var v) const;
  void set(Var v, bool val);

  bool operator==(const Assignment& o) const {
    return domain == o.domain && bits == o.bits;
  }
};

// Indexed clause set over a VarTable. Clause indices are stable; they are
// the identifiers proof cores refer to.
class CnfFormula {
public:
  CnfFormula() = default;
  explicit CnfFormula(VarTable vars) : vars_(std::move(vars)) {}

  const VarTable& vars() const { return vars_; }
  uint32_t num_vars() const { return vars_.size(); }
  uint32_t num_clauses() const { return static_cast<uint32_t>(clauses_.size()); }
  const Clause& clause(uint32_t i) const { return clauses_.at(i); }
  std::span<const Clause> clauses() const { return clauses_; }

  // Returns the new clause's index. Throws if a literal is out of range.
  uint32_t add_clause(Clause c);

  // Stable content hash, used to bind SSAs and projections to a formula.
  uint64_t content_hash() const;

  bool satisfied_by(const Bits& full) const;

private:
  VarTable vars_;
  std::vector<Clause> clauses_;
};

// --- operations ------------------------------------------------------------

// Evaluate a clause under an assignment whose domain covers its variables.
bool clause_satisfied(const Clause& c, const Assignment& p);

// Hamming distance between assignments over equal domains.
uint32_t hamming(const Assignment& p, const Assignment& q);

// Assignments satisfying c at Hamming distance 1 from p. Requires that p
// falsifies c; there is exactly one result per literal of c.
std::vector<Assignment> nbhd(const Assignment& p, const Clause& c);

// Subset of nbhd(p, c) strictly farther from q than p is.
std::vector<Assignment> nbhd_directed(const Assignment& q, const Assignment& p,
                                      const Clause& c);

// Indices of clauses of h falsified by p, ascending. p must cover vars(h).
std::vector<uint32_t> falsified_clauses(const CnfFormula& h, const Assignment& p);

struct CofactorResult {
  CnfFormula reduced;                // no variable of v's domain remains
  std::vector<uint32_t> parent_map;  // reduced clause -> original clause index
  std::vector<Var> var_map;          // reduced var -> original var
};

// g with clauses satisfied by v discarded and literals falsified by v
// removed. May contain the empty clause.
CofactorResult cofactor(const CnfFormula& g, const Assignment& v);

}  // namespace pct
