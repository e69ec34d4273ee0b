#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "satswap/bench.hpp"
#include "satswap/oracle.hpp"
#include "satswap/solver.hpp"
#include "satswap/trace.hpp"

using namespace satswap;

namespace {

void add_cost_options(CLI::App* cmd, CostModel& cost) {
  cmd->add_option("--clock-hz", cost.clock_hz, "accelerator clock in Hz");
  cmd->add_option("--cost.cycles-broadcast", cost.cycles_broadcast, "cycles per broadcast stage");
  cmd->add_option("--cost.cycles-evaluate", cost.cycles_evaluate, "cycles per evaluate stage");
  cmd->add_option("--cost.cycles-select", cost.cycles_select, "cycles per implication select");
  cmd->add_option("--cost.cycles-clear", cost.cycles_clear, "cycles per backtracking clear");
  cmd->add_option("--cost.cycles-load-per-literal", cost.cycles_load_per_literal,
                  "cycles per streamed clause word during a swap");
  cmd->add_option("--cost.axi-write", cost.axi_write_cycles, "cycles per register write");
  cmd->add_option("--cost.axi-read", cost.axi_read_cycles, "cycles per register read");
  cmd->add_option("--cost.poll-interval", cost.poll_interval_cycles,
                  "cycles between completion polls");
  cmd->add_option("--cost.software-ns-per-visit", cost.software_ns_per_clause_visit,
                  "modeled software cost per clause visit (ns)");
}

void add_limit_options(CLI::App* cmd, PartitionLimits& limits) {
  cmd->add_option("--max-clauses", limits.max_clauses, "clause slots on the accelerator");
  cmd->add_option("--max-vars", limits.max_vars, "distinct variables per partition");
  cmd->add_option("--max-literals", limits.max_literals_per_clause,
                  "literal positions per clause slot");
}

BackendKind parse_backend(const std::string& name) {
  if (name == "software") return BackendKind::Software;
  if (name == "hw-sim") return BackendKind::HwSim;
  throw CLI::ValidationError("--backend", "expected 'software' or 'hw-sim'");
}

Formula load_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void print_model(const SolveResult& r, std::ostream& out) {
  int per_line = 0;
  for (std::size_t v = 1; v < r.model.size(); ++v) {
    if (per_line == 0) out << 'v';
    out << ' ' << (r.model[v] == TruthValue::True ? static_cast<int>(v) : -static_cast<int>(v));
    if (++per_line == 20) {
      out << '\n';
      per_line = 0;
    }
  }
  if (per_line == 0) out << 'v';
  out << " 0\n";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Sat: return 10;
    case Verdict::Unsat: return 20;
    case Verdict::Timeout: return 0;  // unknown
  }
  return 1;
}

struct SolveArgs {
  std::string path;
  std::string backend = "hw-sim";
  std::string trace_path;
  PartitionLimits limits;
  CostModel cost;
  std::uint64_t timeout_decisions = 0;
  bool calibrate = false;
};

int run_solve(const SolveArgs& args) {
  Formula f = load_formula(args.path);
  SolverConfig cfg;
  cfg.backend = parse_backend(args.backend);
  cfg.limits = args.limits;
  cfg.cost = args.cost;
  cfg.max_decisions = args.timeout_decisions;
  if (args.calibrate) {
    cfg.cost.software_ns_per_clause_visit = calibrate_software_ns_per_visit();
    std::cerr << "calibrated software_ns_per_clause_visit = "
              << cfg.cost.software_ns_per_clause_visit << "\n";
  }

  std::ofstream trace_file;
  std::unique_ptr<CsvTraceSink> sink;
  if (!args.trace_path.empty()) {
    trace_file.open(args.trace_path);
    if (!trace_file) throw std::runtime_error("cannot open trace file " + args.trace_path);
    sink = std::make_unique<CsvTraceSink>(trace_file);
    cfg.trace = sink.get();
  }

  SolveResult r = solve(f, cfg);
  render_solve_report(args.path, r, cfg.cost, cfg.backend, std::cerr);
  switch (r.verdict) {
    case Verdict::Sat:
      std::cout << "s SATISFIABLE\n";
      print_model(r, std::cout);
      break;
    case Verdict::Unsat:
      std::cout << "s UNSATISFIABLE\n";
      break;
    case Verdict::Timeout:
      std::cout << "s UNKNOWN\n";
      break;
  }
  return verdict_exit_code(r.verdict);
}

struct BenchArgs {
  BenchSpec spec;
  BenchOptions opt;
  std::vector<std::string> backends = {"software", "hw-sim"};
  std::string out_path;
  bool calibrate = false;
};

int run_bench_cmd(BenchArgs& args) {
  args.spec.backends.clear();
  for (const std::string& b : args.backends) args.spec.backends.push_back(parse_backend(b));
  if (args.calibrate) {
    args.opt.cost.software_ns_per_clause_visit = calibrate_software_ns_per_visit();
    std::cerr << "calibrated software_ns_per_clause_visit = "
              << args.opt.cost.software_ns_per_clause_visit << "\n";
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw std::runtime_error("cannot open " + args.out_path);
    out = &file;
  }
  run_bench(args.spec, args.opt, *out, std::cerr);
  std::cerr << '\n';
  render_reference_throughput(std::cerr);
  std::cerr << '\n';
  render_reference_speedup_matrix(std::cerr);
  return 0;
}

struct OracleArgs {
  std::string path;
  std::vector<std::uint64_t> gen;  // vars clauses len seed
};

int run_oracle(const OracleArgs& args) {
  Formula f;
  if (!args.gen.empty()) {
    if (args.gen.size() != 4)
      throw std::runtime_error("--gen expects: vars clauses clause-len seed");
    f = gen_random(static_cast<int>(args.gen[0]), static_cast<int>(args.gen[1]),
                   static_cast<int>(args.gen[2]), args.gen[3]);
  } else if (!args.path.empty()) {
    f = load_formula(args.path);
  } else {
    throw std::runtime_error("oracle needs a DIMACS path or --gen");
  }
  Satisfiability verdict = truth_table_verdict(f);
  if (verdict == Satisfiability::Sat) {
    std::cout << "s SATISFIABLE\n";
    return 10;
  }
  std::cout << "s UNSATISFIABLE\n";
  return 20;
}

struct BreakdownArgs {
  std::string path;
  int fix_vars = -1;
  int fix_clauses = -1;
  BenchSpec spec;
  BenchOptions opt;
  std::string out_path;
};

int run_breakdown(BreakdownArgs& args) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw std::runtime_error("cannot open " + args.out_path);
    out = &file;
  }

  if (args.fix_vars > 0 || args.fix_clauses > 0) {
    run_breakdown_sweep(args.spec, args.opt,
                        args.fix_vars > 0 ? std::optional<int>(args.fix_vars) : std::nullopt,
                        args.fix_clauses > 0 ? std::optional<int>(args.fix_clauses) : std::nullopt,
                        *out, std::cerr);
    return 0;
  }
  if (args.path.empty())
    throw std::runtime_error("breakdown needs a DIMACS path or --fix-vars/--fix-clauses");

  Formula f = load_formula(args.path);
  SolverConfig cfg;
  cfg.backend = BackendKind::HwSim;
  cfg.limits = args.opt.limits;
  cfg.cost = args.opt.cost;
  cfg.max_decisions = args.opt.timeout_decisions;
  SolveResult r = solve(f, cfg);
  write_breakdown_csv_header(*out);
  write_breakdown_row(args.path, f.num_vars(), static_cast<int>(f.clauses().size()), 0, r,
                      cfg.cost, BackendKind::HwSim, *out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DPLL SAT solver with a simulated hot-swapping parallel BCP accelerator"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a DIMACS CNF file");
  solve_cmd->add_option("path", solve_args.path, "DIMACS CNF file")->required();
  solve_cmd->add_option("--backend", solve_args.backend, "software | hw-sim (default hw-sim)");
  solve_cmd->add_option("--timeout-decisions", solve_args.timeout_decisions,
                        "give up after this many decisions (0 = unlimited)");
  solve_cmd->add_option("--trace", solve_args.trace_path, "write the event trace CSV here");
  solve_cmd->add_flag("--calibrate", solve_args.calibrate,
                      "measure software_ns_per_clause_visit at startup");
  add_limit_options(solve_cmd, solve_args.limits);
  add_cost_options(solve_cmd, solve_args.cost);

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run the benchmark matrix");
  bench_cmd->add_option("--vars", bench_args.spec.variable_sizes, "variable sizes");
  bench_cmd->add_option("--clauses", bench_args.spec.clause_sizes, "clause sizes");
  bench_cmd->add_option("--clause-len", bench_args.spec.clause_len, "literals per clause");
  bench_cmd->add_option("--seeds", bench_args.spec.seeds, "instance seeds");
  bench_cmd->add_option("--backends", bench_args.backends, "backends to run");
  bench_cmd->add_option("--out", bench_args.out_path, "CSV output file (default stdout)");
  bench_cmd->add_option("--jobs", bench_args.opt.jobs, "parallel worker threads");
  bench_cmd->add_option("--timeout-decisions", bench_args.opt.timeout_decisions,
                        "per-cell decision cap");
  bench_cmd->add_flag("--calibrate", bench_args.calibrate,
                      "measure software_ns_per_clause_visit at startup (breaks rerun byte-identity)");
  add_limit_options(bench_cmd, bench_args.opt.limits);
  add_cost_options(bench_cmd, bench_args.opt.cost);

  OracleArgs oracle_args;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "exhaustive truth-table verdict (max 24 variables)");
  oracle_cmd->add_option("path", oracle_args.path, "DIMACS CNF file");
  oracle_cmd->add_option("--gen", oracle_args.gen, "generate: vars clauses clause-len seed");

  BreakdownArgs breakdown_args;
  CLI::App* breakdown_cmd =
      app.add_subcommand("breakdown", "per-phase execution time fractions");
  breakdown_cmd->add_option("path", breakdown_args.path, "DIMACS CNF file");
  breakdown_cmd->add_option("--fix-vars", breakdown_args.fix_vars,
                            "fix the variable count, sweep clause sizes");
  breakdown_cmd->add_option("--fix-clauses", breakdown_args.fix_clauses,
                            "fix the clause count, sweep variable sizes");
  breakdown_cmd->add_option("--vars", breakdown_args.spec.variable_sizes, "sweep variable sizes");
  breakdown_cmd->add_option("--clauses", breakdown_args.spec.clause_sizes, "sweep clause sizes");
  breakdown_cmd->add_option("--seeds", breakdown_args.spec.seeds, "instance seeds");
  breakdown_cmd->add_option("--out", breakdown_args.out_path, "CSV output file (default stdout)");
  breakdown_cmd->add_option("--timeout-decisions", breakdown_args.opt.timeout_decisions,
                            "per-cell decision cap");
  add_limit_options(breakdown_cmd, breakdown_args.opt.limits);
  add_cost_options(breakdown_cmd, breakdown_args.opt.cost);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (bench_cmd->parsed()) return run_bench_cmd(bench_args);
    if (oracle_cmd->parsed()) return run_oracle(oracle_args);
    if (breakdown_cmd->parsed()) return run_breakdown(breakdown_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
