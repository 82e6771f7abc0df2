#include "pct/testgen.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pct/parallel.hpp"
#include "pct/rng.hpp"
#include "pct/sat.hpp"

namespace pct {

const char* to_string(TestSetKind k) {
  switch (k) {
    case TestSetKind::Cts: return "CTS";
    case TestSetKind::CtsA: return "CTSA";
    case TestSetKind::CtsAA: return "CTSAA";
    case TestSetKind::Random: return "RANDOM";
  }
  return "?";
}

std::optional<TestSetKind> testset_kind_from(const std::string& s) {
  if (s == "CTS") return TestSetKind::Cts;
  if (s == "CTSA") return TestSetKind::CtsA;
  if (s == "CTSAA") return TestSetKind::CtsAA;
  if (s == "RANDOM") return TestSetKind::Random;
  return std::nullopt;
}

bool TestSet::contains(const Bits& x) const {
  return std::find(tests.begin(), tests.end(), x) != tests.end();
}

std::string serialize_testset(const TestSet& t) {
  std::ostringstream out;
  std::string name = t.circuit_name.empty() ? "circuit" : t.circuit_name;
  for (char& c : name)
    if (c == ' ' || c == '\t') c = '_';
  out << "tests " << name << " " << t.num_inputs << " " << to_string(t.kind) << " "
      << t.seed << "\n";
  for (const Bits& x : t.tests) out << x.to_string() << "\n";
  return out.str();
}

TestSet parse_testset(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  TestSet t;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!have_header) {
      std::string kind;
      if (first != "tests" || !(ss >> t.circuit_name >> t.num_inputs >> kind >> t.seed))
        throw ParseError("expected 'tests <name> <inputs> <kind> <seed>'", lineno);
      auto k = testset_kind_from(kind);
      if (!k) throw ParseError("unknown test-set kind '" + kind + "'", lineno);
      t.kind = *k;
      have_header = true;
      continue;
    }
    Bits x;
    if (!Bits::from_string(first, x) || x.width() != t.num_inputs)
      throw ParseError("expected a bitstring of width " + std::to_string(t.num_inputs), lineno);
    t.tests.push_back(x);
  }
  if (!have_header) throw ParseError("missing test-set header", lineno ? lineno : 1);
  return t;
}

std::vector<Bits> project_distinct(const std::vector<Bits>& points,
                                   const std::vector<uint32_t>& positions) {
  std::vector<Bits> out;
  std::unordered_set<Bits, BitsHash> seen;
  for (const Bits& p : points) {
    Bits proj(static_cast<uint32_t>(positions.size()));
    for (uint32_t i = 0; i < positions.size(); ++i) proj.set(i, p.get(positions[i]));
    if (seen.insert(proj).second) out.push_back(std::move(proj));
  }
  return out;
}

TestSet extract_tests(const Ssa& p, const std::vector<uint32_t>& x_positions,
                      TestSetKind kind, const std::string& circuit_name, uint64_t seed) {
  for (uint32_t pos : x_positions)
    if (pos >= p.width)
      throw ValidationError("extract_tests: input position outside the SSA domain");
  TestSet t;
  t.tests = project_distinct(p.points, x_positions);
  t.kind = kind;
  t.circuit_name = circuit_name;
  t.num_inputs = static_cast<uint32_t>(x_positions.size());
  t.seed = seed;
  t.provenance = "ssa-extract domain=" + std::to_string(p.width);
  return t;
}

TestSet complete_partial_tests(const Ssa& p, uint32_t num_inputs,
                               const std::vector<uint32_t>& x_positions_of_point,
                               const std::string& circuit_name, uint64_t seed) {
  if (x_positions_of_point.size() != p.width)
    throw ValidationError("complete_partial_tests: mapping must cover the SSA domain");
  if (p.width >= num_inputs)
    throw ValidationError("complete_partial_tests: the SSA domain must be a strict subset of the inputs");
  std::vector<bool> covered(num_inputs, false);
  for (uint32_t x : x_positions_of_point) {
    if (x >= num_inputs) throw ValidationError("complete_partial_tests: input index out of range");
    covered[x] = true;
  }

  Rng rng(seed);
  TestSet t;
  t.kind = TestSetKind::CtsAA;
  t.circuit_name = circuit_name;
  t.num_inputs = num_inputs;
  t.seed = seed;
  t.provenance = "partial-inputs covered=" + std::to_string(p.width) + "/" +
                 std::to_string(num_inputs);
  std::unordered_set<Bits, BitsHash> seen;
  for (const Bits& point : p.points) {
    Bits x(num_inputs);
    for (uint32_t i = 0; i < p.width; ++i) x.set(x_positions_of_point[i], point.get(i));
    for (uint32_t i = 0; i < num_inputs; ++i)
      if (!covered[i]) x.set(i, rng.coin());
    if (seen.insert(x).second) t.tests.push_back(std::move(x));
  }
  return t;
}

std::vector<Bits> diversify(const Ssa& p, const CnfFormula& h, uint64_t seed) {
  if (p.width != h.num_vars())
    throw ValidationError("diversify: SSA domain does not match the formula");
  std::vector<bool> occurs(h.num_vars(), false);
  for (const Clause& c : h.clauses())
    for (Lit l : c.lits()) occurs[l.var()] = true;

  std::vector<Var> free_vars;
  for (Var v = 0; v < h.num_vars(); ++v)
    if (!occurs[v]) free_vars.push_back(v);

  std::vector<Bits> out = p.points;
  if (free_vars.empty()) return out;
  Rng rng(seed);
  for (Bits& b : out)
    for (Var v : free_vars) b.set(v, rng.coin());
  return out;
}

TestSet gen_tests(const Circuit& n, const std::vector<Bits>& points,
                  const std::vector<Var>& v_set, const GenTestsOptions& opt,
                  TestSetKind kind) {
  CircuitCnf enc = tseitin_encode_detailed(n);
  CnfFormula body = enc.body();
  const uint32_t num_gates = static_cast<uint32_t>(n.gates().size());
  const uint32_t relax_count = std::max<uint32_t>(1, (num_gates * 2 + 99) / 100);
  std::vector<uint32_t> x_positions(n.num_inputs());
  for (uint32_t i = 0; i < n.num_inputs(); ++i) x_positions[i] = i;

  // Per-point work is independent; slot results by point index so the
  // output never depends on scheduling.
  std::vector<std::vector<Bits>> found(points.size());
  parallel_for(points.size(), opt.jobs, [&](size_t pi) {
    const Bits& pbits = points[pi];
    if (pbits.width() != v_set.size())
      throw ValidationError("gen_tests: point width does not match v_set");
    Assignment v(v_set, pbits);

    auto take_model = [&](const SatResult& r) {
      Bits x(n.num_inputs());
      for (uint32_t i = 0; i < n.num_inputs(); ++i) x.set(i, r.model().bits.get(i));
      found[pi].push_back(std::move(x));
    };

    ExtendedSatResult direct = solve_extended(body, v, opt.seed, opt.solver);
    if (direct.result.is_sat()) {
      take_model(direct.result);
      return;
    }
    for (uint32_t round = 0; round < opt.tries; ++round) {
      Rng rng(Rng::mix(opt.seed, Rng::mix(pi, round)));
      // Pick `relax_count` distinct gates whose clauses get dropped.
      std::vector<uint32_t> ids(num_gates);
      for (uint32_t g = 0; g < num_gates; ++g) ids[g] = g;
      std::vector<uint32_t> chosen;
      for (uint32_t c = 0; c < relax_count && !ids.empty(); ++c) {
        size_t at = static_cast<size_t>(rng.below(ids.size()));
        chosen.push_back(ids[at]);
        ids[at] = ids.back();
        ids.pop_back();
      }
      CnfFormula relaxed = enc.body_without_gates(chosen);
      ExtendedSatResult r = solve_extended(relaxed, v, opt.seed, opt.solver);
      if (r.result.is_sat()) take_model(r.result);
    }
  });

  TestSet t;
  t.kind = kind;
  t.circuit_name = n.name();
  t.num_inputs = n.num_inputs();
  t.seed = opt.seed;
  t.provenance = "gen-tests |V|=" + std::to_string(v_set.size()) +
                 " tries=" + std::to_string(opt.tries);
  std::unordered_set<Bits, BitsHash> seen;
  for (const auto& per_point : found)
    for (const Bits& x : per_point)
      if (seen.insert(x).second) t.tests.push_back(x);
  return t;
}

namespace {

Bits project_bits(const Bits& full, const std::vector<Var>& vars) {
  Bits out(static_cast<uint32_t>(vars.size()));
  for (uint32_t i = 0; i < vars.size(); ++i) out.set(i, full.get(vars[i]));
  return out;
}

}  // namespace

PctResult gen_pct(const Circuit& n, const PctOptions& opt) {
  CircuitCnf enc = tseitin_encode_detailed(n);
  const CnfFormula& g = enc.formula;
  const uint32_t k = n.num_inputs();

  std::vector<Var> v_set;
  switch (opt.mode) {
    case PctOptions::Mode::Full:
      for (Var v = 0; v < g.num_vars(); ++v) v_set.push_back(v);
      break;
    case PctOptions::Mode::Inputs:
      for (Var v = 0; v < k; ++v) v_set.push_back(v);
      break;
    case PctOptions::Mode::Cut: {
      Cut cut = gen_cut(n, opt.cut_size);
      v_set = cut.boundary();
      break;
    }
  }

  // SSA center: the trace of the all-zeros input, or of a seeded random
  // input when rotating centers across iterations.
  Bits x0(k);
  if (opt.iteration > 0) {
    Rng rng(Rng::mix(opt.seed, opt.iteration));
    for (uint32_t i = 0; i < k; ++i) x0.set(i, rng.coin());
  }
  Bits trace = simulate_bits(n, x0);

  std::vector<uint32_t> x_positions;
  for (uint32_t i = 0; i < k; ++i) {
    auto it = std::lower_bound(v_set.begin(), v_set.end(), static_cast<Var>(i));
    if (it != v_set.end() && *it == static_cast<Var>(i))
      x_positions.push_back(static_cast<uint32_t>(it - v_set.begin()));
  }
  const bool x_in_v = x_positions.size() == k;

  auto counterexample_from = [&](const Assignment& model) {
    PctResult res;
    Bits x = project_bits(model.bits, n.input_vars());
    if (!simulate_bits(n, x).get(n.output()))
      throw Error("internal: counterexample does not drive the output to 1");
    res.counterexample = std::move(x);
    return res;
  };

  try {
    if (opt.mode == PctOptions::Mode::Full) {
      // Nothing is excluded: the projection is the formula itself and
      // SemStr reduces to one BuildSSA run on it. The tests come straight
      // from the certified SSA: an SSA holds every unconstrained variable
      // fixed, so per-point randomization of unused inputs would push the
      // witness outside the extracted cubes and void the completeness
      // claim the CTS label makes.
      BuildSsaResult r =
          build_ssa(g, Assignment::full(g.num_vars(), trace), opt.seed, opt.ssa);
      if (r.model) return counterexample_from(*r.model);
      PctResult res;
      res.projection_dump = serialize_projection(g, *r.ssa);
      res.tests = extract_tests(*r.ssa, x_positions, TestSetKind::Cts, n.name(), opt.seed);
      return res;
    }

    SemStrLimits limits{opt.solver, opt.ssa, uint64_t{1} << 32};
    Assignment center(v_set, project_bits(trace, v_set));
    SemStrResult r = sem_str(g, v_set, opt.seed, center, limits);
    if (r.model) return counterexample_from(*r.model);

    Projection& proj = *r.projection;
    std::vector<Bits> points = diversify(proj.ssa, proj.h, opt.seed);

    PctResult res;
    res.projection_dump = serialize_projection(proj.h, proj.ssa);
    if (x_in_v) {
      res.tests = TestSet{};
      res.tests->tests = project_distinct(points, x_positions);
      res.tests->kind = TestSetKind::CtsA;
      res.tests->circuit_name = n.name();
      res.tests->num_inputs = k;
      res.tests->seed = opt.seed;
      res.tests->provenance = "pct |V|=" + std::to_string(v_set.size());
    } else {
      GenTestsOptions gt;
      gt.tries = opt.tries;
      gt.seed = opt.seed;
      gt.jobs = opt.jobs;
      gt.solver = opt.solver;
      res.tests = gen_tests(n, points, v_set, gt, TestSetKind::CtsAA);
    }
    return res;
  } catch (const BudgetExceededError& e) {
    throw e.with_stage("pct");
  }
}

bool verify_cts(const Circuit& n, const TestSet& t, uint64_t node_budget) {
  if (t.num_inputs != n.num_inputs())
    throw ValidationError("verify_cts: test width does not match the circuit");
  CnfFormula g = tseitin_encode(n);
  const uint32_t k = n.num_inputs();
  const uint32_t rest = g.num_vars() - k;

  std::unordered_set<Bits, BitsHash> test_set(t.tests.begin(), t.tests.end());
  std::function<bool(const Bits&)> allowed = [&](const Bits& b) {
    Bits x(k);
    for (uint32_t i = 0; i < k; ++i) x.set(i, b.get(i));
    return test_set.count(x) != 0;
  };

  if (t.tests.empty()) return false;

  // Consistent traces exist in every cube and are the natural centers.
  std::vector<Bits> centers;
  for (const Bits& x : t.tests) centers.push_back(simulate_bits(n, x));
  if (find_ssa_within(g, allowed, centers, node_budget)) return true;

  // Fall back to every cube point while the cubes stay enumerable; an SSA's
  // center is one of its own points, so this candidate list is complete.
  uint64_t cube_size = rest < 63 ? (uint64_t{1} << rest) : UINT64_MAX;
  if (cube_size > node_budget / t.tests.size())
    throw BudgetExceededError("verify-cts",
                              "trace centers exhausted and the cubes are too large to enumerate");
  std::vector<Bits> all_points;
  for (const Bits& x : t.tests) {
    for (uint64_t pat = 0; pat < cube_size; ++pat) {
      Bits b(g.num_vars());
      for (uint32_t i = 0; i < k; ++i) b.set(i, x.get(i));
      for (uint32_t i = 0; i < rest; ++i) b.set(k + i, (pat >> i) & 1);
      all_points.push_back(std::move(b));
    }
  }
  return find_ssa_within(g, allowed, all_points, node_budget).has_value();
}

bool redundancy_aware_verify(const Circuit& n, const TestSet& t, uint64_t node_budget,
                             uint64_t seed) {
  FrontierWalk walk(n);
  while (!walk.done()) {
    walk.pop_expand();
    Cut r = walk.cut();
    if (r.gate_ids.empty()) break;  // primary-input cut
    Circuit above = subcircuit_above_cut(n, r);
    if (solve(tseitin_encode(above), seed).is_sat()) continue;

    // Shallowest redundant cut: everything strictly above it is clean, so
    // the Appendix condition applies here.
    std::vector<Assignment> image = cut_image(n, r, t.tests);
    std::vector<Assignment> unreachable = unreachable_cut_assignments(n, r);

    TestSet boundary_tests;
    boundary_tests.kind = t.kind;
    boundary_tests.circuit_name = above.name();
    boundary_tests.num_inputs = above.num_inputs();
    boundary_tests.seed = t.seed;
    std::unordered_set<Bits, BitsHash> seen;
    for (const Assignment& a : image)
      if (seen.insert(a.bits).second) boundary_tests.tests.push_back(a.bits);
    for (const Assignment& a : unreachable)
      if (seen.insert(a.bits).second) boundary_tests.tests.push_back(a.bits);
    return verify_cts(above, boundary_tests, node_budget);
  }
  return verify_cts(n, t, node_budget);
}

RunReport run_tests(const Circuit& n, const TestSet& t, uint32_t jobs) {
  if (t.num_inputs != n.num_inputs())
    throw ValidationError("run_tests: test width does not match the circuit");
  RunReport r;
  r.outputs.assign(t.tests.size(), false);
  parallel_for(t.tests.size(), jobs, [&](size_t i) {
    r.outputs[i] = simulate_bits(n, t.tests[i]).get(n.output());
  });
  for (bool b : r.outputs)
    if (b) ++r.hits;
  return r;
}

std::string format_run_report(const RunReport& r, const TestSet& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.tests.size(); ++i)
    out << t.tests[i].to_string() << " -> " << (r.outputs[i] ? 1 : 0) << "\n";
  out << "tests=" << t.tests.size() << " hits=" << r.hits << " hit_rate=" << r.hits << "/"
      << t.tests.size() << " seed=" << t.seed << "\n";
  return out.str();
}

TestSet random_tests(const Circuit& n, uint64_t count, uint64_t seed, bool dedup) {
  Rng rng(seed);
  TestSet t;
  t.kind = TestSetKind::Random;
  t.circuit_name = n.name();
  t.num_inputs = n.num_inputs();
  t.seed = seed;
  t.provenance = "uniform count=" + std::to_string(count);
  std::unordered_set<Bits, BitsHash> seen;
  for (uint64_t i = 0; i < count; ++i) {
    Bits x(n.num_inputs());
    for (uint32_t b = 0; b < n.num_inputs(); ++b) x.set(b, rng.coin());
    if (!dedup || seen.insert(x).second) t.tests.push_back(std::move(x));
  }
  return t;
}

}  // namespace pct
