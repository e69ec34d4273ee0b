#pragma once

// Benchmark matrix harness: runs generated instances through both backends
// with identical decision traces and emits plot-ready CSV, plus the per-phase
// breakdown sweeps and the human-readable solve report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "satswap/cnf.hpp"
#include "satswap/perf.hpp"
#include "satswap/solver.hpp"

namespace satswap {

struct BenchSpec {
  std::vector<int> variable_sizes = {63, 126, 252, 630};
  std::vector<int> clause_sizes = {224, 448, 2240, 22400};
  int clause_len = 3;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<BackendKind> backends = {BackendKind::Software, BackendKind::HwSim};
};

struct BenchOptions {
  PartitionLimits limits{};
  CostModel cost{};
  std::uint64_t timeout_decisions = 200'000;
  int jobs = 1;
};

extern const char* kBenchCsvColumns;
extern const char* kBreakdownCsvColumns;

// Writes the versioned schema header (comment lines + column line).
void write_bench_csv_header(std::ostream& csv);
void write_breakdown_csv_header(std::ostream& csv);

// One CSV row per (cell, backend), cells in clause-major order mirroring the
// benchmark matrix. Infeasible cells (clauses < vars/2) are skipped and
// logged. Output is byte-stable for fixed spec/options, independent of jobs.
void run_bench(const BenchSpec& spec, const BenchOptions& opt, std::ostream& csv,
               std::ostream& log);

// Breakdown sweep rows: fixes one axis of the matrix and sweeps the other
// (hw-sim backend). Exactly one of fix_vars/fix_clauses must be set.
void run_breakdown_sweep(const BenchSpec& spec, const BenchOptions& opt, std::optional<int> fix_vars,
                         std::optional<int> fix_clauses, std::ostream& csv, std::ostream& log);

// Breakdown row for one already-solved run.
void write_breakdown_row(const std::string& id, int vars, int clauses, std::uint64_t seed,
                         const SolveResult& result, const CostModel& cost, BackendKind backend,
                         std::ostream& csv);

// Human-readable per-run report: verdict, search counters, per-phase cycle
// totals and derived throughput, headed by the BCP-event definition.
void render_solve_report(const std::string& id, const SolveResult& result, const CostModel& cost,
                         BackendKind backend, std::ostream& out);

// Times the software baseline on a fixed 1,000-implication chain and returns
// the measured ns per clause visit. Opt-in: a calibrated value makes modeled
// and wall-clock speedups comparable but breaks rerun byte-identity.
double calibrate_software_ns_per_visit();

}  // namespace satswap
