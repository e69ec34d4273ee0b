#include "satswap/bench.hpp"

#include <doctest.h>

#include <sstream>

using namespace satswap;

namespace {

BenchSpec tiny_spec() {
  BenchSpec spec;
  spec.variable_sizes = {10, 30};
  spec.clause_sizes = {20, 40};
  spec.seeds = {1, 2};
  return spec;
}

}  // namespace

TEST_CASE("bench csv schema is pinned") {
  std::ostringstream csv;
  write_bench_csv_header(csv);
  CHECK(csv.str() ==
        "# satswap bench csv v1\n"
        "# bcp_event: one literal broadcast evaluated against all resident clauses\n"
        "formula_id,vars,clauses,backend,verdict,decisions,swaps,bcp_events,engine_cycles,"
        "swap_cycles,interface_cycles,total_time_ns,engine_bcps,effective_bcps,speedup\n");
}

TEST_CASE("bench output is deterministic and row-complete") {
  BenchSpec spec = tiny_spec();
  BenchOptions opt;
  std::ostringstream csv1, log1, csv2, log2;
  run_bench(spec, opt, csv1, log1);
  run_bench(spec, opt, csv2, log2);
  CHECK(csv1.str() == csv2.str());
  CHECK(log1.str() == log2.str());

  // 4 feasible cells x 2 seeds x 2 backends + 3 header lines
  int lines = 0;
  std::istringstream in(csv1.str());
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3 + 16);
}

TEST_CASE("bench output is independent of the job count") {
  BenchSpec spec = tiny_spec();
  BenchOptions serial, parallel;
  parallel.jobs = 4;
  std::ostringstream csv1, log1, csv2, log2;
  run_bench(spec, serial, csv1, log1);
  run_bench(spec, parallel, csv2, log2);
  CHECK(csv1.str() == csv2.str());
  CHECK(log1.str() == log2.str());
}

TEST_CASE("infeasible cells are skipped and logged") {
  BenchSpec spec;
  spec.variable_sizes = {630};
  spec.clause_sizes = {224};
  spec.seeds = {1};
  BenchOptions opt;
  std::ostringstream csv, log;
  run_bench(spec, opt, csv, log);
  CHECK(log.str().find("skip v630/c224") != std::string::npos);
  // header only, no data rows
  CHECK(csv.str().find("g1-") == std::string::npos);
}

TEST_CASE("the 63/224 cell is logged as single-partition") {
  BenchSpec spec;
  spec.variable_sizes = {63};
  spec.clause_sizes = {224};
  spec.seeds = {1};
  BenchOptions opt;
  std::ostringstream csv, log;
  run_bench(spec, opt, csv, log);
  CHECK(log.str().find("single-partition g1-v63-c224") != std::string::npos);
  CHECK(csv.str().find("g1-v63-c224,63,224,software") != std::string::npos);
  CHECK(csv.str().find("g1-v63-c224,63,224,hw-sim") != std::string::npos);
}

TEST_CASE("breakdown sweeps emit one row per sweep point with unit fraction sums") {
  BenchSpec spec;  // default matrix axes
  BenchOptions opt;
  opt.timeout_decisions = 2000;
  spec.variable_sizes = {8, 12};
  spec.clause_sizes = {20, 60};
  std::ostringstream csv, log;
  run_breakdown_sweep(spec, opt, 8, std::nullopt, csv, log);

  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);  // version comment
  std::getline(in, line);  // column line
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    // last four comma-separated fields are the fractions
    double fracs[4];
    std::size_t pos = line.size();
    for (int i = 3; i >= 0; --i) {
      std::size_t comma = line.rfind(',', pos - 1);
      fracs[i] = std::stod(line.substr(comma + 1, pos - comma - 1));
      pos = comma;
    }
    CHECK(fracs[0] + fracs[1] + fracs[2] + fracs[3] == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(rows == 2);  // one per swept clause size
  CHECK_THROWS_AS(run_breakdown_sweep(spec, opt, 8, 20, csv, log), std::invalid_argument);
}

TEST_CASE("solve report prints the event definition header") {
  Formula f = gen_random(8, 20, 3, 3);
  SolverConfig cfg;
  cfg.backend = BackendKind::HwSim;
  SolveResult r = solve(f, cfg);
  std::ostringstream os;
  render_solve_report("test", r, cfg.cost, BackendKind::HwSim, os);
  CHECK(os.str().find(bcp_event_definition()) != std::string::npos);
  CHECK(os.str().find("verdict:") != std::string::npos);
  CHECK(os.str().find("partition swaps:") != std::string::npos);
}
