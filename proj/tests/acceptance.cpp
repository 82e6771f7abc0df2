// Acceptance suite: one test case and one printed pass/fail line per
// criterion, with the stated instance counts and runtime bounds pinned in
// code. Brute-force oracles come from test_util.hpp and stay independent of
// the library code paths they judge.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <set>

#include "cli_util.hpp"
#include "pct/semstr.hpp"
#include "pct/testgen.hpp"
#include "test_util.hpp"

using namespace pct;
using namespace pct::testutil;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int criterion, const char* what, bool ok, double elapsed_ms) {
  std::printf("criterion %2d: %s  [%s, %.2f ms]\n", criterion, ok ? "PASS" : "FAIL", what,
              elapsed_ms);
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", criterion, " failed: ", what);
}

std::set<std::string> strings_of(const std::vector<Bits>& v) {
  std::set<std::string> out;
  for (const Bits& b : v) out.insert(b.to_string());
  return out;
}

}  // namespace

TEST_CASE("criterion 1: neighborhood reproduction") {
  Assignment p = full(4, "0110");
  Assignment q = full(4, "0000");
  Clause c{Lit::pos(0), Lit::neg(2)};
  auto start = Clock::now();
  auto around = nbhd(p, c);
  auto directed = nbhd_directed(q, p, c);
  double elapsed = ms_since(start);
  bool ok = around.size() == 2 && around[0].bits == bits("1110") &&
            around[1].bits == bits("0100") && directed.size() == 1 &&
            directed[0].bits == bits("1110") && elapsed < 1.0;
  report(1, "nbhd(0110, v1 | ~v3) and its 0000-directed subset", ok, elapsed);
}

TEST_CASE("criterion 2: SSA example reproduction") {
  CnfFormula h = example_ssa_formula();
  auto start = Clock::now();
  Ssa reference;
  reference.width = 3;
  reference.points = {bits("000"), bits("100"), bits("010"), bits("001")};
  reference.clause_of = {0, 1, 2, 3};
  reference.formula_id = h.content_hash();
  bool accepts = check_ssa(h, reference).ok;
  BuildSsaResult built = build_ssa(h, full(3, "000"));
  double elapsed = ms_since(start);
  bool ok = accepts && built.ssa.has_value() && check_ssa(h, *built.ssa).ok &&
            strings_of(built.ssa->points) ==
                std::set<std::string>{"000", "100", "010", "001"} &&
            elapsed < 10.0;
  report(2, "check_ssa accepts the reference stable set; build_ssa re-derives it", ok, elapsed);
}

TEST_CASE("criterion 3: inputs-projection reproduction") {
  Circuit n = example_miter();
  CnfFormula g = tseitin_encode(n);
  auto start = Clock::now();
  SemStrResult r = sem_str(g, {0, 1, 2});
  bool projection_ok = false;
  if (r.projection) {
    // h must be unsatisfiable (matching the empty existential projection of
    // the unsatisfiable source over X) with every clause implied by g.
    projection_ok = brute_models(r.projection->h).empty() &&
                    brute_projected_models(g, {0, 1, 2}).empty() &&
                    verify_projection(g, *r.projection).ok;
  }
  BuildSsaResult built = build_ssa(worked_projection_formula(), full(3, "000"));
  double elapsed = ms_since(start);
  bool ok = projection_ok && built.ssa.has_value() &&
            strings_of(built.ssa->points) ==
                std::set<std::string>{"000", "001", "011", "101"} &&
            elapsed < 100.0;
  report(3, "sem_str projection onto X; build_ssa on the reference inputs formula", ok, elapsed);
}

TEST_CASE("criterion 4: worked-example CTS accepted, singleton rejected") {
  Circuit n = example_miter();
  auto start = Clock::now();
  TestSet reference;
  reference.num_inputs = 3;
  for (const char* s : {"101", "100", "011", "010", "000"}) reference.tests.push_back(bits(s));
  bool accepts = verify_cts(n, reference);
  TestSet single;
  single.num_inputs = 3;
  single.tests.push_back(bits("000"));
  bool rejects = !verify_cts(n, single);
  double elapsed = ms_since(start);
  bool ok = accepts && rejects && elapsed < 10'000.0;
  report(4, "verify_cts on {101,100,011,010,000} vs {000}", ok, elapsed);
}

TEST_CASE("criterion 5: build_ssa equals brute-force SAT on 10000 formulas") {
  Rng rng(505);
  auto start = Clock::now();
  int failures = 0;
  for (int iter = 0; iter < 10'000; ++iter) {
    CnfFormula h = random_formula(rng, 12, 40);
    Bits center(h.num_vars());
    for (uint32_t i = 0; i < h.num_vars(); ++i) center.set(i, rng.coin());
    BuildSsaResult r = build_ssa(h, Assignment::full(h.num_vars(), center));
    bool sat = brute_sat(h);
    if (sat) {
      if (!r.model || !brute_satisfied(h, r.model->bits)) ++failures;
    } else {
      if (!r.ssa || !check_ssa(h, *r.ssa).ok) ++failures;
    }
  }
  double elapsed = ms_since(start);
  bool ok = failures == 0 && elapsed < 300'000.0;
  report(5, "Prop-1 property suite, 10000 random CNFs (<= 12 vars, <= 40 clauses)", ok,
         elapsed);
}

TEST_CASE("criterion 6: BuildPath length law on 1000 instances") {
  Rng rng(606);
  auto start = Clock::now();
  int done = 0;
  int failures = 0;
  while (done < 1'000) {
    CnfFormula h = random_formula(rng, 10, 24);
    std::vector<Bits> models = brute_models(h);
    if (models.empty()) continue;
    ++done;
    Bits from(h.num_vars());
    for (uint32_t i = 0; i < h.num_vars(); ++i) from.set(i, rng.coin());
    const Bits* nearest = &models[0];
    for (const Bits& m : models)
      if (m.hamming(from) < nearest->hamming(from)) nearest = &m;

    uint64_t rule_seed = rng.next();
    ClauseChoiceRule rule = [rule_seed](const CnfFormula&, const Bits& p,
                                        const std::vector<uint32_t>& falsified) {
      Rng local(Rng::mix(rule_seed, p.hash()));
      return falsified[local.below(falsified.size())];
    };
    auto path = build_path(h, Assignment::full(h.num_vars(), from),
                           Assignment::full(h.num_vars(), *nearest), rule);
    if (path.size() != from.hamming(*nearest) + 1) ++failures;
    for (size_t i = 1; i < path.size(); ++i)
      if (path[i - 1].bits.hamming(path[i].bits) != 1) ++failures;
    if (path.back().bits != *nearest) ++failures;
  }
  double elapsed = ms_since(start);
  report(6, "path length = hamming + 1 with randomized choice rules", failures == 0, elapsed);
}

TEST_CASE("criterion 7: SemStr soundness on 1000 random formulas") {
  Rng rng(707);
  auto start = Clock::now();
  int failures = 0;
  for (int iter = 0; iter < 1'000; ++iter) {
    CnfFormula g = random_formula(rng, 14, 40);
    uint32_t vsize = 1 + static_cast<uint32_t>(rng.below(g.num_vars()));
    std::vector<Var> v_set;
    for (Var v = 0; v < g.num_vars(); ++v) v_set.push_back(v);
    while (v_set.size() > vsize) v_set.erase(v_set.begin() + rng.below(v_set.size()));

    SemStrResult r = sem_str(g, v_set, iter);
    bool sat_by_solver = solve(g, iter).is_sat();
    if (r.model.has_value() != sat_by_solver) {
      ++failures;
      continue;
    }
    if (r.model) {
      if (!brute_satisfied(g, r.model->bits)) ++failures;
    } else {
      // Every clause of h implied by g (per-clause SAT check inside
      // verify_projection) and h model-equivalent to the (empty)
      // existential projection of the unsatisfiable g.
      if (!verify_projection(g, *r.projection).ok) ++failures;
      if (!brute_models(r.projection->h).empty()) ++failures;
      if (!brute_projected_models(g, v_set).empty()) ++failures;
    }
  }
  double elapsed = ms_since(start);
  report(7, "sem_str verdicts + implication checks on 1000 formulas", failures == 0, elapsed);
}

TEST_CASE("criterion 8: self-miters prove, mutants fall") {
  Rng rng(808);
  auto start = Clock::now();
  int failures = 0;

  for (int iter = 0; iter < 100; ++iter) {
    Circuit c = random_circuit(rng, 2 + rng.below(7), 5 + rng.below(36), "c8");
    Circuit m = build_miter(c, c);
    PctOptions opt;
    opt.mode = PctOptions::Mode::Full;
    opt.seed = iter;
    PctResult r = gen_pct(m, opt);
    if (!r.tests || r.tests->kind != TestSetKind::Cts || !verify_cts(m, *r.tests)) ++failures;
  }

  for (int iter = 0; iter < 100; ++iter) {
    Circuit c = random_circuit(rng, 2 + rng.below(7), 5 + rng.below(36), "c8m");
    uint32_t gate = static_cast<uint32_t>(rng.below(c.gates().size()));
    Circuit mutant = with_gate_kind(c, gate, random_other_kind(rng, c.gate(gate).kind));
    bool equivalent = equivalent_by_simulation(c, mutant);
    Circuit m = build_miter(c, mutant);
    PctOptions opt;
    opt.mode = PctOptions::Mode::Full;
    opt.seed = iter;
    PctResult r = gen_pct(m, opt);
    if (equivalent) {
      if (!r.tests || !verify_cts(m, *r.tests)) ++failures;
    } else {
      if (!r.found_counterexample() || !simulate_bits(m, *r.counterexample).get(m.output()))
        ++failures;
    }
  }
  double elapsed = ms_since(start);
  report(8, "100 self-miters proved + 100 single-gate mutants cross-checked", failures == 0,
         elapsed);
}

TEST_CASE("criterion 9: a non-trivial CTS for the worked example") {
  Circuit n = example_miter();
  auto start = Clock::now();
  PctOptions opt;
  opt.mode = PctOptions::Mode::Full;
  PctResult r = gen_pct(n, opt);
  double elapsed = ms_since(start);
  bool ok = r.tests.has_value() && r.tests->tests.size() < 8 && verify_cts(n, *r.tests);
  size_t size = r.tests ? r.tests->tests.size() : 0;
  std::string what = "gen_pct(full) CTS of " + std::to_string(size) + " / 8 tests";
  report(9, what.c_str(), ok, elapsed);
}

TEST_CASE("criterion 10: corner-case hit-rate amplification") {
  auto start = Clock::now();
  int applicable = 0;
  int amplified = 0;
  double sum_test_rate = 0.0, sum_table_rate = 0.0;
  for (uint64_t seedno = 1; seedno <= 20; ++seedno) {
    Rng rng(Rng::mix(1010, seedno));
    // K = AND(R, xa, xb) over 6 inputs with a random 4-input core R.
    CircuitBuilder b("corner");
    for (int i = 1; i <= 6; ++i) b.add_input("x" + std::to_string(i));
    Circuit r4 = random_circuit(rng, 4, 4 + rng.below(8), "r");
    std::vector<std::string> name(r4.num_signals());
    for (Var s = 0; s < 4; ++s) name[s] = "x" + std::to_string(s + 1);
    for (const Gate& g : r4.gates()) {
      name[g.out] = "r" + std::to_string(g.id);
      std::vector<std::string> fanins;
      for (Var f : g.fanins) fanins.push_back(name[f]);
      b.add_gate(name[g.out], g.kind, fanins);
    }
    b.add_gate("k", GateKind::And, {name[r4.output()], "x5", "x6"});
    b.set_output("k");
    Circuit k = std::move(b).build();

    // Truth-table rate of K = 1.
    uint64_t ones = 0;
    for (uint64_t v = 0; v < 64; ++v) {
      Bits x(6);
      for (uint32_t i = 0; i < 6; ++i) x.set(i, (v >> i) & 1);
      if (simulate_bits(k, x).get(k.output())) ++ones;
    }
    double table_rate = ones / 64.0;

    Circuit m = build_miter(k, k);
    PctOptions opt;
    opt.mode = PctOptions::Mode::Inputs;
    opt.seed = seedno;
    PctResult r = gen_pct(m, opt);
    REQUIRE(r.tests.has_value());
    RunReport rep = run_tests(k, *r.tests);
    if (rep.hits == 0) continue;  // directional claim applies to hitting sets only
    ++applicable;
    sum_test_rate += rep.hit_rate();
    sum_table_rate += table_rate;
    if (rep.hit_rate() > table_rate) ++amplified;
  }
  double elapsed = ms_since(start);
  bool ok = applicable > 0 && amplified == applicable;
  char what[160];
  std::snprintf(what, sizeof what,
                "hit rate beats the truth table in %d/%d hitting runs (avg %.3f vs %.3f)",
                amplified, applicable, applicable ? sum_test_rate / applicable : 0.0,
                applicable ? sum_table_rate / applicable : 0.0);
  report(10, what, ok, elapsed);
}

TEST_CASE("criterion 11: CLI byte determinism") {
  auto start = Clock::now();
  ScratchDir dir("accept11");
  std::string net = dir.write("equiv_check.net", example_netlist());
  std::string tests = dir.write("t.txt", "tests equiv_check 3 CTS 0\n101\n100\n011\n010\n000\n");
  std::vector<std::string> cmds = {
      "encode " + net,
      "miter " + net + " " + net,
      "pct " + net + " --mode full --seed 5",
      "pct " + net + " --mode inputs --seed 5",
      "pct " + net + " --mode cut --cut-size 2 --tries 3 --seed 5",
      "verify-cts " + net + " " + tests,
      "run " + net + " " + tests,
      "cut " + net + " --cut-size 2",
      "random " + net + " --count 8 --seed 5",
  };
  bool ok = true;
  for (const std::string& cmd : cmds) {
    CommandResult a = run_command(cmd);
    CommandResult b = run_command(cmd);
    if (a.exit_code != b.exit_code || a.output != b.output) ok = false;
  }
  double elapsed = ms_since(start);
  report(11, "all CLI commands byte-identical across reruns", ok, elapsed);
}
