#include "satswap/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace satswap {

const char* to_string(ControlState s) {
  switch (s) {
    case ControlState::Idle: return "Idle";
    case ControlState::LoadClauses: return "LoadClauses";
    case ControlState::ClearAssignments: return "ClearAssignments";
    case ControlState::Broadcast: return "Broadcast";
    case ControlState::Evaluate: return "Evaluate";
    case ControlState::SelectImplication: return "SelectImplication";
    case ControlState::ReportDone: return "ReportDone";
    case ControlState::ReportConflict: return "ReportConflict";
  }
  return "?";
}

const char* to_string(SlotStatus s) {
  switch (s) {
    case SlotStatus::Empty: return "Empty";
    case SlotStatus::Satisfied: return "Satisfied";
    case SlotStatus::Falsified: return "Falsified";
    case SlotStatus::Unit: return "Unit";
    case SlotStatus::Unresolved: return "Unresolved";
  }
  return "?";
}

BcpEngine::BcpEngine(EngineConfig cfg, CostModel cost, PerfCounters* counters, TraceSink* trace)
    : cfg_(cfg), cost_(std::move(cost)), counters_(counters), trace_(trace) {
  if (cfg_.num_slots < 1 || cfg_.slot_capacity < 1)
    throw std::invalid_argument("engine config fields must be >= 1");
  cost_.validate();
  slots_.resize(static_cast<std::size_t>(cfg_.num_slots));
}

void BcpEngine::charge_engine(std::uint64_t cycles) {
  cycle_count_ += cycles;
  if (counters_) counters_->engine_cycles += cycles;
}

void BcpEngine::charge_swap(std::uint64_t cycles) {
  cycle_count_ += cycles;
  if (counters_) counters_->swap_cycles += cycles;
}

void BcpEngine::trace(const char* action, int slot) {
  if (trace_) trace_->event(cycle_count_, to_string(control_), action, slot);
}

void BcpEngine::recompute(int si) {
  ClauseSlot& s = slots_[static_cast<std::size_t>(si)];
  if (s.lits.empty()) {
    s.status = SlotStatus::Empty;
    s.unit_lit = Lit();
    return;
  }
  if (s.tautological) {
    s.status = SlotStatus::Satisfied;
    s.unit_lit = Lit();
    return;
  }
  int unassigned = 0;
  Lit last_free;
  for (std::size_t i = 0; i < s.lits.size(); ++i) {
    TruthValue v = lit_value(s.values[i], s.lits[i]);
    if (v == TruthValue::True) {
      s.status = SlotStatus::Satisfied;
      s.unit_lit = Lit();
      return;
    }
    if (v == TruthValue::Unassigned) {
      ++unassigned;
      last_free = s.lits[i];
    }
  }
  if (unassigned == 0) {
    s.status = SlotStatus::Falsified;
    s.unit_lit = Lit();
  } else if (unassigned == 1) {
    s.status = SlotStatus::Unit;
    s.unit_lit = last_free;
  } else {
    s.status = SlotStatus::Unresolved;
    s.unit_lit = Lit();
  }
}

void BcpEngine::load_partition(const Formula& f, const Partition& p) {
  std::vector<std::vector<Lit>> clauses;
  clauses.reserve(p.clause_indices.size());
  for (int ci : p.clause_indices)
    clauses.push_back(f.clauses()[static_cast<std::size_t>(ci)].literals());
  load_clauses(p.id, clauses);
}

void BcpEngine::load_clauses(int partition_id, const std::vector<std::vector<Lit>>& clauses) {
  if (control_ != ControlState::Idle && control_ != ControlState::ReportDone &&
      control_ != ControlState::ReportConflict)
    throw std::logic_error("load while engine mid-transaction");
  if (static_cast<int>(clauses.size()) > cfg_.num_slots)
    throw std::invalid_argument("partition exceeds clause processor array");

  control_ = ControlState::LoadClauses;
  trace("load_begin", -1);

  for (ClauseSlot& s : slots_) s = ClauseSlot{};
  var_slots_.clear();
  pending_.clear();
  conflict_ = false;
  occupied_ = static_cast<int>(clauses.size());

  std::uint64_t words = 0;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty()) throw std::invalid_argument("empty clause in partition");
    if (static_cast<int>(clauses[i].size()) > cfg_.slot_capacity)
      throw std::invalid_argument("clause exceeds slot capacity");
    words += clauses[i].size();
    Clause normalized{clauses[i]};
    ClauseSlot& s = slots_[i];
    s.lits = normalized.literals();
    s.tautological = normalized.tautological();
    s.values.assign(s.lits.size(), TruthValue::Unassigned);
    s.levels.assign(s.lits.size(), 0);
    for (Lit l : s.lits) {
      auto& list = var_slots_[l.var()];
      if (list.empty() || list.back() != static_cast<int>(i)) list.push_back(static_cast<int>(i));
    }
    recompute(static_cast<int>(i));
  }

  charge_swap(words * static_cast<std::uint64_t>(cost_.cycles_load_per_literal));
  if (counters_) ++counters_->partition_swaps;
  loaded_partition_ = partition_id;
  control_ = ControlState::Idle;
  trace("load_commit", -1);
}

TruthValue BcpEngine::assigned_value(int var) const {
  auto it = var_slots_.find(var);
  if (it == var_slots_.end()) return TruthValue::Unassigned;
  const ClauseSlot& s = slots_[static_cast<std::size_t>(it->second.front())];
  for (std::size_t i = 0; i < s.lits.size(); ++i)
    if (s.lits[i].var() == var) return s.values[i];
  return TruthValue::Unassigned;
}

void BcpEngine::broadcast(Lit lit, int level) {
  // Evaluate is a legal source so assignment bursts can broadcast
  // back-to-back before a single evaluation settles them.
  if (control_ != ControlState::Idle && control_ != ControlState::ReportDone &&
      control_ != ControlState::SelectImplication && control_ != ControlState::Broadcast &&
      control_ != ControlState::Evaluate)
    throw std::logic_error(std::string("broadcast from state ") + to_string(control_));
  TruthValue existing = assigned_value(lit.var());
  TruthValue wanted = lit.positive() ? TruthValue::True : TruthValue::False;
  if (existing != TruthValue::Unassigned && existing != wanted)
    throw std::logic_error("conflicting re-broadcast of variable " + std::to_string(lit.var()));

  control_ = ControlState::Broadcast;
  trace(("broadcast " + std::to_string(lit.to_dimacs()) + "@" + std::to_string(level)).c_str(),
        -1);
  auto it = var_slots_.find(lit.var());
  if (it != var_slots_.end()) {
    for (int si : it->second) {
      ClauseSlot& s = slots_[static_cast<std::size_t>(si)];
      for (std::size_t i = 0; i < s.lits.size(); ++i) {
        if (s.lits[i].var() != lit.var()) continue;
        s.values[i] = wanted;
        s.levels[i] = level;
      }
      recompute(si);
    }
  }
  charge_engine(static_cast<std::uint64_t>(cost_.cycles_broadcast));
  if (counters_) ++counters_->bcp_events;
  current_level_ = level;
  control_ = ControlState::Evaluate;
}

void BcpEngine::evaluate() {
  if (control_ != ControlState::Evaluate)
    throw std::logic_error(std::string("evaluate from state ") + to_string(control_));

  pending_.clear();
  conflict_ = false;
  for (int si = 0; si < occupied_; ++si) {
    const ClauseSlot& s = slots_[static_cast<std::size_t>(si)];
    if (s.status == SlotStatus::Falsified) {
      conflict_ = true;
      continue;
    }
    if (s.status != SlotStatus::Unit) continue;
    bool duplicate = false;
    for (const Implication& p : pending_) {
      if (p.literal.var() != s.unit_lit.var()) continue;
      if (p.literal == s.unit_lit) {
        duplicate = true;  // same forced literal from a later slot
      } else {
        conflict_ = true;  // opposite forced values
      }
    }
    if (!duplicate) pending_.push_back({s.unit_lit, si, current_level_});
  }
  charge_engine(static_cast<std::uint64_t>(cost_.cycles_evaluate));
  trace("evaluate", -1);
  if (conflict_)
    control_ = ControlState::ReportConflict;
  else if (!pending_.empty())
    control_ = ControlState::SelectImplication;
  else
    control_ = ControlState::ReportDone;
}

Implication BcpEngine::select_implication() {
  if (control_ != ControlState::SelectImplication)
    throw std::logic_error(std::string("select from state ") + to_string(control_));
  if (pending_.empty()) throw std::logic_error("select with no pending implications");
  Implication imp = pending_.front();  // pending is in slot order: lowest slot wins
  pending_.erase(pending_.begin());
  imp.decision_level = current_level_;
  charge_engine(static_cast<std::uint64_t>(cost_.cycles_select));
  trace("select", imp.source_slot);
  control_ = ControlState::Broadcast;
  return imp;
}

void BcpEngine::clear_above(int level) {
  control_ = ControlState::ClearAssignments;
  trace(("clear>" + std::to_string(level)).c_str(), -1);
  for (int si = 0; si < occupied_; ++si) {
    ClauseSlot& s = slots_[static_cast<std::size_t>(si)];
    for (std::size_t i = 0; i < s.lits.size(); ++i) {
      if (s.levels[i] > level) {
        s.values[i] = TruthValue::Unassigned;
        s.levels[i] = 0;
      }
    }
    recompute(si);
  }
  pending_.clear();
  conflict_ = false;
  charge_engine(static_cast<std::uint64_t>(cost_.cycles_clear));
  control_ = ControlState::Idle;
}

BcpResult BcpEngine::run_bcp(std::optional<Lit> trigger, int level) {
  if (control_ != ControlState::Idle && control_ != ControlState::ReportDone &&
      control_ != ControlState::SelectImplication)
    throw std::logic_error(std::string("run_bcp from state ") + to_string(control_));
  if (!loaded_partition_) throw std::logic_error("run_bcp with no partition loaded");

  current_level_ = level;
  BcpResult result;
  if (trigger) {
    broadcast(*trigger, level);
  } else if (control_ != ControlState::SelectImplication) {
    control_ = ControlState::Evaluate;
  }

  // Each selected implication assigns a fresh variable, so the loop is
  // bounded by the partition's variable count.
  int guard = 0;
  const int max_iterations = static_cast<int>(var_slots_.size()) + 2;
  for (;;) {
    if (control_ == ControlState::Evaluate) evaluate();
    if (control_ == ControlState::ReportConflict) {
      result.conflict = true;
      result.implied.clear();
      return result;
    }
    if (control_ == ControlState::ReportDone) return result;
    Implication imp = select_implication();
    result.implied.push_back(imp);
    broadcast(imp.literal, level);
    if (++guard > max_iterations) throw std::logic_error("run_bcp failed to terminate");
  }
}

BcpEngine::StateDigest BcpEngine::digest() const {
  StateDigest d;
  d.control = control_;
  d.conflict = conflict_;
  d.partition = loaded_partition_;
  d.cycles = cycle_count_;
  d.slots = slots_;
  d.pending = pending_;
  return d;
}

}  // namespace satswap
