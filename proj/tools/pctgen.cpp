// Command-line driver: encode circuits, build miters, generate and verify
// property-checking test sets. Exit codes are a stable contract:
//   0 success / property holds
//  10 counterexample found / verification failed
//  20 a resource budget ran out
//   1 usage, parse or validation error
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pct/dimacs.hpp"
#include "pct/netlist.hpp"
#include "pct/semstr.hpp"
#include "pct/testgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 10;
constexpr int kExitBudget = 20;
constexpr int kExitUsage = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pct::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pct::Error("cannot write '" + path + "'");
  out << data;
}

pct::Circuit load_circuit(const std::string& path) {
  std::string text = read_file(path);
  std::string name = std::filesystem::path(path).stem().string();
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text.compare(i, 4, "aag ") == 0)
    return pct::parse_aiger_ascii(text, name);
  return pct::parse_netlist(text, name);
}

pct::TestSet load_tests(const std::string& path) { return pct::parse_testset(read_file(path)); }

struct CommonOpts {
  uint64_t seed = 0;
  uint64_t conflict_budget = 1'000'000;
  uint64_t ssa_budget = uint64_t{1} << 26;
  uint32_t jobs = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_jobs = true) {
  cmd->add_option("--seed", o.seed, "Random seed echoed into outputs")
      ->envname("PCTGEN_SEED")
      ->capture_default_str();
  cmd->add_option("--conflict-budget", o.conflict_budget, "SAT conflict budget per call")
      ->envname("PCTGEN_CONFLICT_BUDGET")
      ->capture_default_str();
  cmd->add_option("--ssa-budget", o.ssa_budget, "SSA state budget per construction")
      ->envname("PCTGEN_SSA_BUDGET")
      ->capture_default_str();
  if (with_jobs)
    cmd->add_option("--jobs", o.jobs, "Worker threads for independent solver/simulation calls")
        ->envname("PCTGEN_JOBS")
        ->capture_default_str();
  cmd->add_option("-o,--output", o.out, "Output path (default stdout)")->envname("PCTGEN_OUTPUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property-checking test generation via stable sets of assignments"};
  app.require_subcommand(1);

  // encode
  std::string enc_in;
  CommonOpts enc_opts;
  CLI::App* enc = app.add_subcommand("encode", "Tseitin-encode a circuit to DIMACS (output asserted)");
  enc->add_option("circuit", enc_in, "Netlist or ASCII AIGER file")->required();
  add_common(enc, enc_opts, false);

  // miter
  std::string mit_a, mit_b, mit_reduce = "or";
  std::vector<std::string> mit_outs1, mit_outs2;
  CommonOpts mit_opts;
  CLI::App* mit = app.add_subcommand("miter", "Build an equivalence-checking miter netlist");
  mit->add_option("left", mit_a)->required();
  mit->add_option("right", mit_b)->required();
  mit->add_option("--outputs1", mit_outs1, "Signals of the left circuit to compare")->delimiter(',');
  mit->add_option("--outputs2", mit_outs2, "Signals of the right circuit to compare")->delimiter(',');
  mit->add_option("--reduce", mit_reduce, "Combine per-pair XORs with 'or' or 'and'")
      ->check(CLI::IsMember({"or", "and"}))
      ->capture_default_str();
  add_common(mit, mit_opts, false);

  // pct
  std::string pct_in, pct_mode = "inputs", pct_dump;
  uint32_t pct_cut_size = 0, pct_tries = 5, pct_iteration = 0;
  CommonOpts pct_opts;
  CLI::App* pc = app.add_subcommand("pct", "Generate a property-checking test set (GenPCT)");
  pc->add_option("circuit", pct_in)->required();
  pc->add_option("--mode", pct_mode, "Projection variables: full, inputs or cut")
      ->check(CLI::IsMember({"full", "inputs", "cut"}))
      ->envname("PCTGEN_MODE")
      ->capture_default_str();
  pc->add_option("--cut-size", pct_cut_size, "Cut size for --mode cut")->envname("PCTGEN_CUT_SIZE");
  pc->add_option("--tries", pct_tries, "Relaxation rounds per unreachable cut assignment")
      ->envname("PCTGEN_TRIES")
      ->capture_default_str();
  pc->add_option("--iteration", pct_iteration, "Center rotation index (0 = all-zeros input trace)")
      ->capture_default_str();
  pc->add_option("--dump-projection", pct_dump, "Also write the projection (DIMACS + SSA block)");
  add_common(pc, pct_opts);

  // verify-cts
  std::string vc_circ, vc_tests;
  bool vc_redundancy = false;
  CommonOpts vc_opts;
  CLI::App* vc = app.add_subcommand("verify-cts", "Check that a test set is a CTS for the circuit");
  vc->add_option("circuit", vc_circ)->required();
  vc->add_option("tests", vc_tests)->required();
  vc->add_flag("--redundancy-aware", vc_redundancy, "Apply the redundant-circuit variant");
  add_common(vc, vc_opts, false);

  // run
  std::string run_circ, run_tests_path;
  CommonOpts run_opts;
  CLI::App* rn = app.add_subcommand("run", "Simulate a test set and report output-1 hits");
  rn->add_option("circuit", run_circ)->required();
  rn->add_option("tests", run_tests_path)->required();
  add_common(rn, run_opts);

  // cut
  std::string cut_in;
  uint32_t cut_size = 0;
  CommonOpts cut_opts;
  CLI::App* ct = app.add_subcommand("cut", "List the internal cut the frontier walk selects");
  ct->add_option("circuit", cut_in)->required();
  ct->add_option("--cut-size", cut_size, "Requested |gates| + |inputs|")->required()
      ->envname("PCTGEN_CUT_SIZE");
  add_common(ct, cut_opts, false);

  // random
  std::string rnd_in;
  uint64_t rnd_count = 0;
  bool rnd_dedup = false;
  CommonOpts rnd_opts;
  CLI::App* rd = app.add_subcommand("random", "Generate seeded uniform random tests");
  rd->add_option("circuit", rnd_in)->required();
  rd->add_option("--count", rnd_count, "Number of draws")->required();
  rd->add_flag("--dedup", rnd_dedup, "Drop duplicate tests");
  add_common(rd, rnd_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const CommonOpts* o : {&enc_opts, &mit_opts, &pct_opts, &vc_opts, &run_opts,
                              &cut_opts, &rnd_opts}) {
    if (o->conflict_budget == 0 || o->ssa_budget == 0) {
      std::cerr << "error: budgets must be positive\n";
      return kExitUsage;
    }
  }

  try {
    if (*enc) {
      pct::Circuit c = load_circuit(enc_in);
      write_output(enc_opts.out, pct::to_dimacs(pct::tseitin_encode(c)));
      return kExitOk;
    }

    if (*mit) {
      pct::Circuit a = load_circuit(mit_a);
      pct::Circuit b = load_circuit(mit_b);
      pct::Circuit m =
          mit_outs1.empty()
              ? pct::build_miter(a, b)
              : pct::build_miter(a, b, mit_outs1, mit_outs2,
                                 mit_reduce == "or" ? pct::MiterReduction::Or
                                                    : pct::MiterReduction::And);
      write_output(mit_opts.out, pct::write_netlist(m));
      return kExitOk;
    }

    if (*pc) {
      pct::Circuit c = load_circuit(pct_in);
      pct::PctOptions o;
      o.mode = pct_mode == "full"   ? pct::PctOptions::Mode::Full
             : pct_mode == "inputs" ? pct::PctOptions::Mode::Inputs
                                    : pct::PctOptions::Mode::Cut;
      o.cut_size = pct_cut_size;
      o.tries = pct_tries;
      o.seed = pct_opts.seed;
      o.iteration = pct_iteration;
      o.jobs = pct_opts.jobs;
      o.solver.max_conflicts = pct_opts.conflict_budget;
      o.ssa.max_states = pct_opts.ssa_budget;
      if (o.mode == pct::PctOptions::Mode::Cut && o.cut_size == 0)
        throw pct::Error("--mode cut requires --cut-size");

      pct::PctResult r = pct::gen_pct(c, o);
      if (!pct_dump.empty() && r.projection_dump)
        write_output(pct_dump, *r.projection_dump);
      if (r.found_counterexample()) {
        write_output(pct_opts.out, "counterexample " + r.counterexample->to_string() + "\n");
        return kExitCounterexample;
      }
      write_output(pct_opts.out, pct::serialize_testset(*r.tests));
      return kExitOk;
    }

    if (*vc) {
      pct::Circuit c = load_circuit(vc_circ);
      pct::TestSet t = load_tests(vc_tests);
      bool ok = vc_redundancy ? pct::redundancy_aware_verify(c, t, vc_opts.ssa_budget, vc_opts.seed)
                              : pct::verify_cts(c, t, vc_opts.ssa_budget);
      write_output(vc_opts.out, std::string("CTS: ") + (ok ? "holds" : "does not hold") + "\n");
      return ok ? kExitOk : kExitCounterexample;
    }

    if (*rn) {
      pct::Circuit c = load_circuit(run_circ);
      pct::TestSet t = load_tests(run_tests_path);
      pct::RunReport r = pct::run_tests(c, t, run_opts.jobs);
      write_output(run_opts.out, pct::format_run_report(r, t));
      return r.hits == 0 ? kExitOk : kExitCounterexample;
    }

    if (*ct) {
      pct::Circuit c = load_circuit(cut_in);
      pct::Cut r = pct::gen_cut(c, cut_size);
      std::ostringstream out;
      out << "cut " << c.name() << " " << r.gate_ids.size() << " " << r.inputs_in_cut.size()
          << "\n";
      for (uint32_t gid : r.gate_ids) out << "gate " << c.signal_name(c.gate(gid).out) << "\n";
      for (pct::Var i : r.inputs_in_cut) out << "input " << c.signal_name(i) << "\n";
      write_output(cut_opts.out, out.str());
      return kExitOk;
    }

    if (*rd) {
      pct::Circuit c = load_circuit(rnd_in);
      write_output(rnd_opts.out,
                   pct::serialize_testset(pct::random_tests(c, rnd_count, rnd_opts.seed, rnd_dedup)));
      return kExitOk;
    }
  } catch (const pct::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
