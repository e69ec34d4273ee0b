#include "satswap/bench.hpp"

#include <chrono>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace satswap {

const char* kBenchCsvColumns =
    "formula_id,vars,clauses,backend,verdict,decisions,swaps,bcp_events,engine_cycles,"
    "swap_cycles,interface_cycles,total_time_ns,engine_bcps,effective_bcps,speedup";

const char* kBreakdownCsvColumns =
    "formula_id,vars,clauses,seed,backend,verdict,partitions,engine_frac,swap_frac,"
    "interface_frac,software_frac";

void write_bench_csv_header(std::ostream& csv) {
  csv << "# satswap bench csv v1\n# " << bcp_event_definition() << '\n'
      << kBenchCsvColumns << '\n';
}

void write_breakdown_csv_header(std::ostream& csv) {
  csv << "# satswap breakdown csv v1\n" << kBreakdownCsvColumns << '\n';
}

namespace {

const char* backend_name(BackendKind b) {
  return b == BackendKind::Software ? "software" : "hw-sim";
}

std::string cell_id(std::uint64_t seed, int vars, int clauses) {
  return "g" + std::to_string(seed) + "-v" + std::to_string(vars) + "-c" +
         std::to_string(clauses);
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void write_bench_row(std::ostream& csv, const std::string& id, int vars, int clauses,
                     BackendKind backend, const SolveResult& r, const SolveResult* baseline,
                     const CostModel& cost) {
  const PerfCounters& pc = r.counters;
  double total = total_time_ns(pc, cost);
  std::string engine_bcps = fmt("%.3f", pc.engine_cycles ? engine_throughput(pc, cost) : 0.0);
  std::string effective = fmt("%.3f", total > 0 ? effective_throughput(pc, cost) : 0.0);
  std::string ratio;
  if (backend == BackendKind::Software) {
    ratio = fmt("%.6f", 1.0);
  } else if (baseline != nullptr) {
    ratio = fmt("%.6f", speedup(pc, baseline->counters, cost));
  }
  csv << id << ',' << vars << ',' << clauses << ',' << backend_name(backend) << ','
      << to_string(r.verdict) << ',' << pc.decisions << ',' << pc.partition_swaps << ','
      << pc.bcp_events << ',' << pc.engine_cycles << ',' << pc.swap_cycles << ','
      << pc.interface_cycles << ',' << fmt("%.3f", total) << ',' << engine_bcps << ','
      << effective << ',' << ratio << '\n';
}

struct CellOutput {
  std::string csv;
  std::string log;
};

CellOutput run_cell(int vars, int clauses, const BenchSpec& spec, const BenchOptions& opt) {
  std::ostringstream csv, log;
  if (clauses < vars / 2) {
    log << "skip v" << vars << "/c" << clauses << ": infeasible cell (clauses < vars/2)\n";
    return {csv.str(), log.str()};
  }
  if (spec.clause_len > vars) {
    log << "skip v" << vars << "/c" << clauses << ": clause_len exceeds vars\n";
    return {csv.str(), log.str()};
  }
  for (std::uint64_t seed : spec.seeds) {
    Formula f = gen_random(vars, clauses, spec.clause_len, seed);
    std::string id = cell_id(seed, vars, clauses);

    std::optional<SolveResult> software, hw;
    for (BackendKind b : spec.backends) {
      SolverConfig cfg;
      cfg.backend = b;
      cfg.limits = opt.limits;
      cfg.cost = opt.cost;
      cfg.max_decisions = opt.timeout_decisions;
      SolveResult r = solve(f, cfg);
      if (b == BackendKind::Software)
        software = std::move(r);
      else
        hw = std::move(r);
    }
    if (software && hw) {
      if (software->verdict != hw->verdict)
        throw std::logic_error("backend verdicts diverge on " + id);
      if (software->decision_hash != hw->decision_hash)
        throw std::logic_error("backend decision traces diverge on " + id);
    }
    if (hw && hw->partitions == 1)
      log << "single-partition " << id << " (fits without partitioning)\n";
    for (BackendKind b : spec.backends) {
      const SolveResult& r = b == BackendKind::Software ? *software : *hw;
      write_bench_row(csv, id, vars, clauses, b, r,
                      b == BackendKind::HwSim && software ? &*software : nullptr, opt.cost);
      if (r.verdict == Verdict::Timeout)
        log << "timeout " << id << " (" << backend_name(b) << ") after " << r.counters.decisions
            << " decisions\n";
    }
  }
  return {csv.str(), log.str()};
}

}  // namespace

void run_bench(const BenchSpec& spec, const BenchOptions& opt, std::ostream& csv,
               std::ostream& log) {
  if (spec.variable_sizes.empty() || spec.clause_sizes.empty() || spec.seeds.empty() ||
      spec.backends.empty())
    throw std::invalid_argument("bench spec lists must be non-empty");
  opt.cost.validate();

  write_bench_csv_header(csv);

  std::vector<std::pair<int, int>> cells;  // clause-major, mirroring the matrix
  for (int clauses : spec.clause_sizes)
    for (int vars : spec.variable_sizes) cells.emplace_back(vars, clauses);

  int jobs = opt.jobs < 1 ? 1 : opt.jobs;
  std::vector<CellOutput> outputs(cells.size());
  for (std::size_t base = 0; base < cells.size(); base += static_cast<std::size_t>(jobs)) {
    std::size_t end = std::min(cells.size(), base + static_cast<std::size_t>(jobs));
    std::vector<std::future<CellOutput>> batch;
    for (std::size_t i = base; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&, i] {
        return run_cell(cells[i].first, cells[i].second, spec, opt);
      }));
    for (std::size_t i = base; i < end; ++i) outputs[i] = batch[i - base].get();
  }
  for (const CellOutput& out : outputs) {  // deterministic cell order
    csv << out.csv;
    log << out.log;
  }
}

void write_breakdown_row(const std::string& id, int vars, int clauses, std::uint64_t seed,
                         const SolveResult& result, const CostModel& cost, BackendKind backend,
                         std::ostream& csv) {
  TimeBreakdown b{};
  if (total_time_ns(result.counters, cost) > 0) b = time_breakdown(result.counters, cost);
  csv << id << ',' << vars << ',' << clauses << ',' << seed << ',' << backend_name(backend)
      << ',' << to_string(result.verdict) << ',' << result.partitions << ','
      << fmt("%.9f", b.engine) << ',' << fmt("%.9f", b.swap) << ',' << fmt("%.9f", b.interface)
      << ',' << fmt("%.9f", b.software) << '\n';
}

void run_breakdown_sweep(const BenchSpec& spec, const BenchOptions& opt,
                         std::optional<int> fix_vars, std::optional<int> fix_clauses,
                         std::ostream& csv, std::ostream& log) {
  if (fix_vars.has_value() == fix_clauses.has_value())
    throw std::invalid_argument("exactly one of fix_vars/fix_clauses must be set");
  write_breakdown_csv_header(csv);
  const std::vector<int>& sweep = fix_vars ? spec.clause_sizes : spec.variable_sizes;
  for (int point : sweep) {
    int vars = fix_vars ? *fix_vars : point;
    int clauses = fix_vars ? point : *fix_clauses;
    if (clauses < vars / 2 || spec.clause_len > vars) {
      log << "skip v" << vars << "/c" << clauses << ": infeasible cell\n";
      continue;
    }
    for (std::uint64_t seed : spec.seeds) {
      Formula f = gen_random(vars, clauses, spec.clause_len, seed);
      SolverConfig cfg;
      cfg.backend = BackendKind::HwSim;
      cfg.limits = opt.limits;
      cfg.cost = opt.cost;
      cfg.max_decisions = opt.timeout_decisions;
      SolveResult r = solve(f, cfg);
      write_breakdown_row(cell_id(seed, vars, clauses), vars, clauses, seed, r, opt.cost,
                          BackendKind::HwSim, csv);
      if (r.verdict == Verdict::Timeout)
        log << "timeout " << cell_id(seed, vars, clauses) << " after " << r.counters.decisions
            << " decisions\n";
    }
  }
}

double calibrate_software_ns_per_visit() {
  // 1,000-implication chain: deciding x1 forces x2..x1001 one by one.
  std::vector<Clause> clauses;
  for (int v = 1; v <= 1000; ++v)
    clauses.push_back(Clause({Lit(v, false), Lit(v + 1, true)}));
  Formula f(1001, std::move(clauses));

  double best_ns_per_visit = 0.0;
  for (int round = 0; round < 3; ++round) {
    PerfCounters pc;
    SoftwareBcp backend(f, pc);
    Trail trail(1001);
    trail.assign_decision(Lit(1, true));
    auto t0 = std::chrono::steady_clock::now();
    backend.propagate(trail, Lit(1, true));
    auto dt = std::chrono::steady_clock::now() - t0;
    double ns = static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(dt).count());
    double per_visit = ns / static_cast<double>(pc.clause_visits);
    if (round == 0 || per_visit < best_ns_per_visit) best_ns_per_visit = per_visit;
  }
  return best_ns_per_visit;
}

void render_solve_report(const std::string& id, const SolveResult& result, const CostModel& cost,
                         BackendKind backend, std::ostream& out) {
  const PerfCounters& pc = result.counters;
  out << "== satswap solve report ==\n";
  out << "# " << bcp_event_definition() << '\n';
  out << "instance:         " << id << '\n';
  out << "backend:          " << backend_name(backend) << '\n';
  out << "verdict:          " << to_string(result.verdict) << '\n';
  out << "decisions:        " << pc.decisions << '\n';
  out << "backtracks:       " << pc.backtracks << '\n';
  out << "implications:     " << pc.implications << '\n';
  out << "partition swaps:  " << pc.partition_swaps << '\n';
  if (backend == BackendKind::HwSim) out << "partitions:       " << result.partitions << '\n';
  out << "bcp events:       " << pc.bcp_events << '\n';
  out << "engine cycles:    " << pc.engine_cycles << '\n';
  out << "swap cycles:      " << pc.swap_cycles << '\n';
  out << "interface cycles: " << pc.interface_cycles << '\n';
  out << "status polls:     " << pc.status_polls << '\n';
  out << "clause visits:    " << pc.clause_visits << '\n';
  out << "modeled time:     " << fmt("%.1f", total_time_ns(pc, cost)) << " ns (hw "
      << fmt("%.1f", modeled_hw_time_ns(pc, cost)) << ", software "
      << fmt("%.1f", modeled_software_time_ns(pc, cost)) << ")\n";
  out << "wall time:        " << fmt("%.3f", pc.wall_time_ns / 1e6) << " ms (measured)\n";
  if (pc.engine_cycles > 0)
    out << "engine BCP/s:     " << format_bcps(engine_throughput(pc, cost)) << '\n';
  if (total_time_ns(pc, cost) > 0)
    out << "effective BCP/s:  " << format_bcps(effective_throughput(pc, cost)) << '\n';
}

}  // namespace satswap
