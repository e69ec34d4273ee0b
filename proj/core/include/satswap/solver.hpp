#pragma once

// Complete DPLL search with chronological backtracking, driving either the
// software propagation baseline or the simulated accelerator through the
// register interface, with partition hot-swapping and cross-partition
// implication propagation.

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "satswap/cnf.hpp"
#include "satswap/engine.hpp"
#include "satswap/partition.hpp"
#include "satswap/perf.hpp"
#include "satswap/registers.hpp"
#include "satswap/trace.hpp"

namespace satswap {

enum class Reason : std::uint8_t { Decision, Implied };

struct TrailEntry {
  Lit lit;
  int level = 0;
  Reason reason = Reason::Decision;
  int source_partition = -1;  // -1: decision or software propagation
  bool flipped = false;       // decision whose opposite polarity was already tried
};

// Assignment order, level-monotone. backtrack_to(k) removes exactly the
// entries with level > k.
class Trail {
 public:
  explicit Trail(int num_vars);

  int num_vars() const { return values_.num_vars(); }
  int current_level() const { return current_level_; }
  const std::vector<TrailEntry>& entries() const { return entries_; }
  const Assignment& assignment() const { return values_; }
  TruthValue value(int var) const { return values_.value(var); }
  TruthValue value(Lit l) const { return values_.value(l); }
  int level_of(int var) const { return level_of_[static_cast<std::size_t>(var)]; }
  bool all_assigned() const { return values_.all_assigned(); }
  int assigned_count() const { return values_.assigned_count(); }

  void assign_decision(Lit l, bool flipped = false);
  void assign_implied(Lit l, int level, int source_partition);
  void backtrack_to(int level);

 private:
  Assignment values_;
  std::vector<int> level_of_;
  std::vector<TrailEntry> entries_;
  int current_level_ = 0;
};

enum class PropagationResult { Quiescent, Conflict };

class PropagationBackend {
 public:
  virtual ~PropagationBackend() = default;

  // Propagates to the global fixpoint. `seed` is the literal whose assignment
  // triggered the call; nullopt reconsiders the whole formula (the initial
  // level-0 pass and the pass after a backtrack, which can re-expose units).
  virtual PropagationResult propagate(Trail& trail, std::optional<Lit> seed) = 0;
  virtual void on_backtrack(const Trail& trail, int level) = 0;
};

// Sequential unit propagation over the whole formula: scan for a unit clause,
// apply it, rescan, until fixpoint or a falsified clause. Serves as the
// speedup baseline and as the correctness reference for the hardware path.
class SoftwareBcp final : public PropagationBackend {
 public:
  SoftwareBcp(const Formula& f, PerfCounters& counters) : formula_(f), counters_(counters) {}

  PropagationResult propagate(Trail& trail, std::optional<Lit> seed) override;
  void on_backtrack(const Trail&, int) override {}

 private:
  const Formula& formula_;
  PerfCounters& counters_;
};

// Work-list propagation over hot-swapped partitions: loads a partition if it
// is not resident, replays relevant trail assignments at their original
// levels, runs the engine, appends returned implications and re-queues every
// other partition containing a newly implied variable.
class HotswapBcp final : public PropagationBackend {
 public:
  HotswapBcp(const Formula& f, PartitionPlan plan, const PartitionLimits& limits,
             const CostModel& cost, PerfCounters& counters, TraceSink* trace = nullptr);

  PropagationResult propagate(Trail& trail, std::optional<Lit> seed) override;
  void on_backtrack(const Trail& trail, int level) override;

  const PartitionPlan& plan() const { return plan_; }
  const BcpEngine& engine() const { return engine_; }
  const RegisterInterface& registers() const { return reg_; }

 private:
  PropagationResult visit(int pi, Trail& trail, int level, std::deque<int>& queue,
                          std::vector<char>& in_queue);

  const Formula& formula_;
  PartitionPlan plan_;
  PerfCounters& counters_;
  BcpEngine engine_;
  RegisterInterface reg_;
  std::optional<int> resident_;
  std::vector<TruthValue> shadow_value_;  // resident partition's engine-side copy
  std::vector<int> shadow_level_;
  std::vector<std::vector<int>> partitions_of_var_;
  std::vector<int> unit_seed_partitions_;
  std::vector<std::pair<Lit, int>> feed_batch_;
};

enum class Verdict { Sat, Unsat, Timeout };

const char* to_string(Verdict v);

enum class BackendKind { Software, HwSim };

enum class DecisionHeuristic { LowestIndexPositive, LowestIndexNegative };

// Default heuristic: lowest-index unassigned variable, positive polarity
// first. Returns nullopt when all variables are assigned.
std::optional<Lit> decide(const Trail& trail, const Formula& f, DecisionHeuristic h);

// Chronological backtracking: pops to the most recent decision not yet tried
// with the opposite polarity, clears the backend above that point, appends
// and returns the flipped literal. nullopt means both polarities are
// exhausted everywhere (UNSAT).
std::optional<Lit> backtrack(Trail& trail, PropagationBackend& backend);

struct SolverConfig {
  BackendKind backend = BackendKind::Software;
  PartitionLimits limits{};
  CostModel cost{};
  DecisionHeuristic heuristic = DecisionHeuristic::LowestIndexPositive;
  std::uint64_t max_decisions = 0;  // 0 = unlimited
  TraceSink* trace = nullptr;
};

struct SolveResult {
  Verdict verdict = Verdict::Unsat;
  std::vector<TruthValue> model;  // indexed by var, valid when Sat
  PerfCounters counters;
  std::uint64_t decision_hash = 0;  // decisions and flips, in order
  int partitions = 0;               // hw backend: partition count of the plan
};

SolveResult solve(const Formula& f, const SolverConfig& cfg);

}  // namespace satswap
