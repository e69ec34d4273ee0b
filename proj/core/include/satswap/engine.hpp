#pragma once

// Functional and cycle-stepped model of the BCP engine: a control FSM, an
// array of clause processors holding per-slot copies of the variable
// assignment, and a fixed-priority implication selector. Clause contents are
// hot-swapped at runtime; nothing observable survives a reload.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "satswap/cnf.hpp"
#include "satswap/partition.hpp"
#include "satswap/perf.hpp"
#include "satswap/trace.hpp"

namespace satswap {

enum class ControlState : std::uint8_t {
  Idle,
  LoadClauses,
  ClearAssignments,
  Broadcast,
  Evaluate,
  SelectImplication,
  ReportDone,
  ReportConflict,
};

const char* to_string(ControlState s);

enum class SlotStatus : std::uint8_t { Empty, Satisfied, Falsified, Unit, Unresolved };

const char* to_string(SlotStatus s);

struct Implication {
  Lit literal;
  int source_slot = -1;
  int decision_level = 0;

  friend bool operator==(const Implication&, const Implication&) = default;
};

struct BcpResult {
  bool conflict = false;
  std::vector<Implication> implied;  // emission order
};

struct EngineConfig {
  int num_slots = 224;
  int slot_capacity = 16;
};

// One clause processor: the stored literal array plus this slot's copy of
// the assignment, one (value, level) pair per literal position.
struct ClauseSlot {
  std::vector<Lit> lits;
  std::vector<TruthValue> values;
  std::vector<int> levels;
  bool tautological = false;
  SlotStatus status = SlotStatus::Empty;
  Lit unit_lit;  // forced literal, valid iff status == Unit

  bool occupied() const { return status != SlotStatus::Empty; }

  friend bool operator==(const ClauseSlot&, const ClauseSlot&) = default;
};

// FSM edges implemented here (pinned by tests):
//   Idle -> LoadClauses -> Idle                      load_clauses
//   any  -> ClearAssignments -> Idle                 clear_above
//   {Idle, ReportDone, SelectImplication, Evaluate} -> Broadcast -> Evaluate
//   Evaluate -> {ReportConflict | SelectImplication | ReportDone}
//   SelectImplication -> Broadcast                    select_implication
//   {Idle, ReportDone} -> Evaluate                    trigger-less run entry
// (Evaluate -> Broadcast lets an assignment burst broadcast back-to-back
// before one evaluation settles the array.)
class BcpEngine {
 public:
  BcpEngine(EngineConfig cfg, CostModel cost, PerfCounters* counters = nullptr,
            TraceSink* trace = nullptr);

  // Hot-swap: slot i receives the i-th clause of p, remaining slots empty,
  // all assignment copies cleared. Charged per streamed literal word.
  void load_partition(const Formula& f, const Partition& p);
  void load_clauses(int partition_id, const std::vector<std::vector<Lit>>& clauses);

  // Updates every slot's assignment copy for lit's variable in one cycle and
  // recomputes statuses. Re-broadcasting the same value is a no-op; the
  // opposite value is a driver fault (std::logic_error).
  void broadcast(Lit lit, int level);

  // Collects pending implications from Unit slots (deduplicated by variable,
  // lowest slot first), detects conflicts (a falsified slot, or two pending
  // implications forcing opposite values) and picks the next control state.
  void evaluate();

  // Fixed-priority mux: pops the pending implication with the lowest source
  // slot; the engine then re-broadcasts it.
  Implication select_implication();

  // Resets every assignment entry above `level` in all slots, recomputes
  // statuses, clears pending implications and the conflict flag.
  void clear_above(int level);

  // Drives Broadcast -> Evaluate -> SelectImplication until ReportDone or
  // ReportConflict. Without a trigger, evaluation starts from the resident
  // state (fresh-load units, or a parked SelectImplication to resume).
  BcpResult run_bcp(std::optional<Lit> trigger, int level);

  ControlState control() const { return control_; }
  bool conflict_flag() const { return conflict_; }
  const std::vector<Implication>& pending() const { return pending_; }
  std::optional<int> loaded_partition() const { return loaded_partition_; }
  std::uint64_t cycle_count() const { return cycle_count_; }
  int num_slots() const { return cfg_.num_slots; }
  int slot_capacity() const { return cfg_.slot_capacity; }
  const ClauseSlot& slot(int i) const { return slots_[static_cast<std::size_t>(i)]; }
  int occupied_slots() const { return occupied_; }

  // Value of a variable in the resident assignment copies (Unassigned when
  // the variable does not occur in the loaded partition).
  TruthValue assigned_value(int var) const;

  struct StateDigest {
    ControlState control;
    bool conflict;
    std::optional<int> partition;
    std::uint64_t cycles;
    std::vector<ClauseSlot> slots;
    std::vector<Implication> pending;

    friend bool operator==(const StateDigest&, const StateDigest&) = default;
  };
  StateDigest digest() const;

 private:
  void charge_engine(std::uint64_t cycles);
  void charge_swap(std::uint64_t cycles);
  void recompute(int slot);
  void trace(const char* action, int slot);

  EngineConfig cfg_;
  CostModel cost_;
  PerfCounters* counters_;
  TraceSink* trace_;

  std::vector<ClauseSlot> slots_;
  std::unordered_map<int, std::vector<int>> var_slots_;
  std::vector<Implication> pending_;
  bool conflict_ = false;
  ControlState control_ = ControlState::Idle;
  std::optional<int> loaded_partition_;
  std::uint64_t cycle_count_ = 0;
  int current_level_ = 0;
  int occupied_ = 0;
};

}  // namespace satswap
