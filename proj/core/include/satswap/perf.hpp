#pragma once

// Cycle accounting and derived metrics: BCP/s throughput, hardware/software
// speedup and per-phase execution-time breakdowns, plus the published
// reference figures rendered alongside measured results.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace satswap {

// Every per-event cost is configuration; the clock default matches the
// reference hardware. A "BCP event" is one literal broadcast evaluated
// against all resident clauses; this definition is printed in every report
// header so numbers are self-describing.
struct CostModel {
  double clock_hz = 106'660'000.0;
  int cycles_broadcast = 1;
  int cycles_evaluate = 1;
  int cycles_select = 1;
  int cycles_clear = 1;
  int cycles_load_per_literal = 1;  // per streamed clause word during a swap
  int axi_write_cycles = 8;         // discrete register write
  int axi_read_cycles = 8;          // discrete register read
  int axi_stream_word_cycles = 1;   // per word inside an open write burst
  int poll_interval_cycles = 4;  // cycles between status reads while waiting
  double software_ns_per_clause_visit = 4.0;

  void validate() const;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct PerfCounters {
  std::uint64_t bcp_events = 0;
  std::uint64_t engine_cycles = 0;     // Broadcast/Evaluate/Select/Clear stages
  std::uint64_t swap_cycles = 0;       // LoadClauses streaming
  std::uint64_t interface_cycles = 0;  // register writes, reads, polls
  std::uint64_t status_polls = 0;
  std::uint64_t clause_visits = 0;  // software-baseline clause evaluations
  double wall_time_ns = 0.0;        // measured, never part of deterministic output

  std::uint64_t decisions = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t implications = 0;
  std::uint64_t partition_swaps = 0;

  friend bool operator==(const PerfCounters&, const PerfCounters&) = default;
};

inline std::uint64_t total_hw_cycles(const PerfCounters& pc) {
  return pc.engine_cycles + pc.swap_cycles + pc.interface_cycles;
}

double modeled_hw_time_ns(const PerfCounters& pc, const CostModel& cm);
double modeled_software_time_ns(const PerfCounters& pc, const CostModel& cm);

// Modeled total for one run: hardware path cycles plus modeled software time
// (one of the two is zero for a pure run of either backend).
double total_time_ns(const PerfCounters& pc, const CostModel& cm);

// Maximum-theoretical throughput: events over engine-resident cycles only.
// Throws std::invalid_argument when engine_cycles == 0.
double engine_throughput(const PerfCounters& pc, const CostModel& cm);

// Real throughput: events averaged over total execution time (swap,
// interface and software components included).
double effective_throughput(const PerfCounters& pc, const CostModel& cm);

// software total time / hardware total time. Both runs must have solved the
// same formula with the same decisions; a decision-count mismatch throws.
double speedup(const PerfCounters& hw, const PerfCounters& sw, const CostModel& cm);

struct TimeBreakdown {
  double engine = 0.0;
  double swap = 0.0;
  double interface = 0.0;
  double software = 0.0;
};

// Fractions of total_time_ns; they sum to 1 within 1e-9. Throws when the
// total is zero.
TimeBreakdown time_breakdown(const PerfCounters& pc, const CostModel& cm);

const char* bcp_event_definition();

// Formats a throughput value the way the reference tables quote them
// (e.g. "362M", "313K").
std::string format_bcps(double bcps);

// Published measurements of the reference hardware and of the two designs it
// is compared against; rendered verbatim in reports next to modeled numbers.
void render_reference_throughput(std::ostream& out);
void render_reference_speedup_matrix(std::ostream& out);

}  // namespace satswap
