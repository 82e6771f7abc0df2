#pragma once

#include <optional>
#include <string>

#include "pct/circuit.hpp"
#include "pct/semstr.hpp"
#include "pct/ssa.hpp"
#include "pct/tseitin.hpp"

namespace pct {

enum class TestSetKind : uint8_t { Cts, CtsA, CtsAA, Random };

const char* to_string(TestSetKind k);
std::optional<TestSetKind> testset_kind_from(const std::string& s);

// Deduplicated input assignments plus provenance. kind Cts is reserved for
// sets extracted from an SSA of the full output-asserted encoding.
struct TestSet {
  std::vector<Bits> tests;  // width = number of circuit inputs
  TestSetKind kind = TestSetKind::Random;
  std::string circuit_name;
  uint32_t num_inputs = 0;
  uint64_t seed = 0;
  // How the set was produced (projection variables, tries, ...); carried in
  // memory only, the serialized header stays fixed.
  std::string provenance;

  bool contains(const Bits& x) const;
};

// Header "tests <circuit-name> <|X|> <kind> <seed>", then one bitstring per
// line in declared input order.
std::string serialize_testset(const TestSet& t);
TestSet parse_testset(const std::string& text);

// --- extraction -------------------------------------------------------------

// Distinct projections onto the given positions, in first-occurrence order.
std::vector<Bits> project_distinct(const std::vector<Bits>& points,
                                   const std::vector<uint32_t>& positions);

// All distinct assignments to X occurring in the SSA's points.
// x_positions[i] is the position of input i inside the SSA's domain.
TestSet extract_tests(const Ssa& p, const std::vector<uint32_t>& x_positions,
                      TestSetKind kind, const std::string& circuit_name, uint64_t seed);

// SSA over a strict subset of the inputs: extend every point over the
// missing inputs with seeded random bits. x_positions_of_point[i] is the
// input index covered by point bit i.
TestSet complete_partial_tests(const Ssa& p, uint32_t num_inputs,
                               const std::vector<uint32_t>& x_positions_of_point,
                               const std::string& circuit_name, uint64_t seed);

// Randomize, per point, every variable that h never mentions; all other
// bits are untouched. The result still falsifies the mapped clauses but is
// no longer a certified SSA.
std::vector<Bits> diversify(const Ssa& p, const CnfFormula& h, uint64_t seed);

// --- GenTests ----------------------------------------------------------------

struct GenTestsOptions {
  uint32_t tries = 5;
  uint64_t seed = 0;
  uint32_t jobs = 1;
  SolverLimits solver;
};

// Fig-7 style translation of cut assignments into tests: for every point v,
// take the inputs of a model of F_N ∧ v; when unsatisfiable, retry `tries`
// times against F_N with the clauses of a small random gate subset removed
// (one subset per round, max(1, 2% of gates) gates each).
TestSet gen_tests(const Circuit& n, const std::vector<Bits>& points,
                  const std::vector<Var>& v_set, const GenTestsOptions& opt,
                  TestSetKind kind = TestSetKind::CtsAA);

// --- GenPCT driver -----------------------------------------------------------

struct PctOptions {
  enum class Mode { Full, Inputs, Cut } mode = Mode::Inputs;
  uint32_t cut_size = 0;  // Mode::Cut only
  uint32_t tries = 5;
  uint64_t seed = 0;
  // Center rotation: iteration 0 starts the SSA from the all-zeros input
  // trace, iteration i > 0 from a seeded random input trace.
  uint32_t iteration = 0;
  uint32_t jobs = 1;
  SolverLimits solver;
  SsaLimits ssa;
};

struct PctResult {
  std::optional<TestSet> tests;
  std::optional<Bits> counterexample;  // input assignment driving the output to 1
  // Serialized proof artifact (DIMACS of the certified formula + SSA block),
  // present whenever the prover succeeded.
  std::optional<std::string> projection_dump;

  bool found_counterexample() const { return counterexample.has_value(); }
};

// Full pipeline: encode, choose V, prove via SemStr (or BuildSSA directly
// when nothing is excluded), diversify, extract tests. The kind follows the
// projection taxonomy: Cts for the full variable set, CtsA when X ⊆ V,
// CtsAA otherwise.
PctResult gen_pct(const Circuit& n, const PctOptions& opt);

// --- verification ------------------------------------------------------------

// True iff the union of the tests' cubes contains an SSA of the
// output-asserted encoding. Candidate centers are the tests' consistent
// traces first, then every cube point while the cubes stay enumerable.
// Budget exhaustion raises; it is never reported as false.
bool verify_cts(const Circuit& n, const TestSet& t, uint64_t node_budget = uint64_t{1} << 22);

// Appendix-style variant for redundant circuits: at the shallowest swept
// cut R with N_R ≡ 0, check that the tests' cut image plus the unreachable
// cut assignments form a CTS of N_R. Falls back to verify_cts when no
// swept cut is redundant.
bool redundancy_aware_verify(const Circuit& n, const TestSet& t,
                             uint64_t node_budget = uint64_t{1} << 22, uint64_t seed = 0);

// --- running tests -----------------------------------------------------------

struct RunReport {
  uint64_t hits = 0;            // tests driving the output to 1
  std::vector<bool> outputs;    // per test, in order
  double hit_rate() const { return outputs.empty() ? 0.0 : double(hits) / outputs.size(); }
};

RunReport run_tests(const Circuit& n, const TestSet& t, uint32_t jobs = 1);

// Line-oriented report plus a machine-readable key=value summary.
std::string format_run_report(const RunReport& r, const TestSet& t);

// Seeded uniform baseline; deduplicates only when requested.
TestSet random_tests(const Circuit& n, uint64_t count, uint64_t seed, bool dedup = false);

}  // namespace pct
