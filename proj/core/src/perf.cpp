#include "satswap/perf.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace satswap {

void CostModel::validate() const {
  auto positive = [](double v) { return v > 0; };
  if (!positive(clock_hz) || !positive(cycles_broadcast) || !positive(cycles_evaluate) ||
      !positive(cycles_select) || !positive(cycles_clear) || !positive(cycles_load_per_literal) ||
      !positive(axi_write_cycles) || !positive(axi_read_cycles) ||
      !positive(axi_stream_word_cycles) || !positive(poll_interval_cycles) ||
      !positive(software_ns_per_clause_visit))
    throw std::invalid_argument("cost model fields must be strictly positive");
}

double modeled_hw_time_ns(const PerfCounters& pc, const CostModel& cm) {
  return static_cast<double>(total_hw_cycles(pc)) / cm.clock_hz * 1e9;
}

double modeled_software_time_ns(const PerfCounters& pc, const CostModel& cm) {
  return static_cast<double>(pc.clause_visits) * cm.software_ns_per_clause_visit;
}

double total_time_ns(const PerfCounters& pc, const CostModel& cm) {
  return modeled_hw_time_ns(pc, cm) + modeled_software_time_ns(pc, cm);
}

double engine_throughput(const PerfCounters& pc, const CostModel& cm) {
  if (pc.engine_cycles == 0)
    throw std::invalid_argument("engine_throughput: zero engine cycles");
  double seconds = static_cast<double>(pc.engine_cycles) / cm.clock_hz;
  return static_cast<double>(pc.bcp_events) / seconds;
}

double effective_throughput(const PerfCounters& pc, const CostModel& cm) {
  double ns = total_time_ns(pc, cm);
  if (ns <= 0) throw std::invalid_argument("effective_throughput: zero total time");
  return static_cast<double>(pc.bcp_events) / (ns * 1e-9);
}

double speedup(const PerfCounters& hw, const PerfCounters& sw, const CostModel& cm) {
  if (hw.decisions != sw.decisions)
    throw std::invalid_argument("speedup: mismatched decision traces");
  double hw_ns = total_time_ns(hw, cm);
  if (hw_ns <= 0) throw std::invalid_argument("speedup: zero hardware time");
  return total_time_ns(sw, cm) / hw_ns;
}

TimeBreakdown time_breakdown(const PerfCounters& pc, const CostModel& cm) {
  double total = total_time_ns(pc, cm);
  if (total <= 0) throw std::invalid_argument("time_breakdown: zero total time");
  double per_cycle_ns = 1e9 / cm.clock_hz;
  TimeBreakdown b;
  b.engine = static_cast<double>(pc.engine_cycles) * per_cycle_ns / total;
  b.swap = static_cast<double>(pc.swap_cycles) * per_cycle_ns / total;
  b.interface = static_cast<double>(pc.interface_cycles) * per_cycle_ns / total;
  b.software = modeled_software_time_ns(pc, cm) / total;
  return b;
}

const char* bcp_event_definition() {
  return "bcp_event: one literal broadcast evaluated against all resident clauses";
}

std::string format_bcps(double bcps) {
  char buf[32];
  if (bcps >= 1e6)
    std::snprintf(buf, sizeof buf, "%.0fM", bcps / 1e6);
  else if (bcps >= 1e3)
    std::snprintf(buf, sizeof buf, "%.0fK", bcps / 1e3);
  else
    std::snprintf(buf, sizeof buf, "%.0f", bcps);
  return buf;
}

namespace {

struct ReferenceThroughputRow {
  const char* instance;
  int davis_mbcps;
  int thong_mbcps;
  int this_design_mbcps;
};

// Measured on the reference hardware; reproduced here for report context only.
constexpr ReferenceThroughputRow kReferenceThroughput[] = {
    {"bmc-galileo-8", 40, 102, 175},
    {"bmc-ibm-12", 33, 150, 169},
};

struct ReferenceCell {
  const char* bcps;  // nullptr marks an NA cell
  const char* speedup;
};

constexpr int kReferenceVars[] = {63, 126, 252, 630};
constexpr int kReferenceClauses[] = {224, 448, 2240, 22400};

// Rows by clause count, columns by variable count.
constexpr ReferenceCell kReferenceMatrix[4][4] = {
    {{"362M", "2.2x"}, {"17K", "0.17x"}, {nullptr, nullptr}, {nullptr, nullptr}},
    {{"702K", "1.6x"}, {"21K", "0.21x"}, {"13K", "0.08x"}, {nullptr, nullptr}},
    {{"441K", "1.91x"}, {"22K", "1.26x"}, {"16K", "0.61x"}, {"12K", "0.10x"}},
    {{"313K", "6.32x"}, {"20K", "5.04x"}, {"16K", "4.86x"}, {"14K", "3.31x"}},
};

}  // namespace

void render_reference_throughput(std::ostream& out) {
  out << "reference BCP engine throughput (millions of BCP/s, hardware measurements)\n";
  out << "  instance        davis  thong  this-design\n";
  char buf[96];
  for (const auto& row : kReferenceThroughput) {
    std::snprintf(buf, sizeof buf, "  %-14s  %5d  %5d  %11d\n", row.instance, row.davis_mbcps,
                  row.thong_mbcps, row.this_design_mbcps);
    out << buf;
  }
}

void render_reference_speedup_matrix(std::ostream& out) {
  out << "reference hardware/software speedup and effective throughput\n";
  out << "(63 vars / 224 clauses is the no-partitioning upper limit: the entire\n";
  out << " formula fits on the accelerator without partitioning)\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "  %8s", "clauses");
  out << buf;
  for (int v : kReferenceVars) {
    std::snprintf(buf, sizeof buf, "  %12d", v);
    out << buf;
  }
  out << '\n';
  for (int r = 0; r < 4; ++r) {
    std::snprintf(buf, sizeof buf, "  %8d", kReferenceClauses[r]);
    out << buf;
    for (int c = 0; c < 4; ++c) {
      const ReferenceCell& cell = kReferenceMatrix[r][c];
      if (cell.bcps == nullptr) {
        std::snprintf(buf, sizeof buf, "  %12s", "NA");
      } else {
        std::string s = std::string(cell.bcps) + " " + cell.speedup;
        std::snprintf(buf, sizeof buf, "  %12s", s.c_str());
      }
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace satswap
