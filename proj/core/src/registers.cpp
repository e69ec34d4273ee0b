#include "satswap/registers.hpp"

#include <stdexcept>
#include <string>

namespace satswap {

std::uint32_t pack_literal(Lit l) {
  if (l.var() < 1 || l.var() > kMaxRegisterVar)
    throw std::invalid_argument("variable id out of register range: " + std::to_string(l.var()));
  std::uint32_t w = static_cast<std::uint32_t>(l.var());
  if (l.positive()) w |= kLitPolarityBit;
  return w;
}

Lit unpack_literal(std::uint32_t word) {
  int var = static_cast<int>(word & kLitVarMask);
  if (var == 0) return Lit();
  return Lit(var, (word & kLitPolarityBit) != 0);
}

std::uint32_t pack_command(Command cmd) {
  if (cmd.operand > 0x0FFF'FFFFu) throw std::invalid_argument("command operand exceeds 28 bits");
  return (static_cast<std::uint32_t>(cmd.opcode) << 28) | cmd.operand;
}

Command unpack_command(std::uint32_t word) {
  return Command{static_cast<Opcode>(word >> 28), word & 0x0FFF'FFFFu};
}

RegisterInterface::RegisterInterface(BcpEngine& engine, const CostModel& cost,
                                     PerfCounters* counters, TraceSink* trace)
    : engine_(engine), cost_(cost), counters_(counters), trace_(trace) {}

void RegisterInterface::charge_write() {
  if (counters_) counters_->interface_cycles += static_cast<std::uint64_t>(cost_.axi_write_cycles);
}

void RegisterInterface::charge_read() {
  if (counters_) counters_->interface_cycles += static_cast<std::uint64_t>(cost_.axi_read_cycles);
}

void RegisterInterface::refresh_flags() {
  if (engine_.conflict_flag())
    status_ |= kStatusConflict;
  else
    status_ &= ~kStatusConflict;
  if (!readout_.empty())
    status_ |= kStatusImplicationAvailable;
  else
    status_ &= ~kStatusImplicationAvailable;
}

void RegisterInterface::fail(const char* why) {
  status_ |= kStatusError;
  if (trace_) trace_->event(engine_.cycle_count(), "Register", std::string("error ") + why, -1);
}

void RegisterInterface::abort_load() {
  loading_ = false;
  expected_clauses_ = 0;
  staged_.clear();
  staged_clause_.clear();
}

void RegisterInterface::abort_burst() {
  burst_pairs_ = 0;
  burst_have_level_ = false;
  burst_discard_ = false;
}

void RegisterInterface::write_data(std::uint32_t word) {
  if (loading_) {
    stream_word(word);
    return;
  }
  if (burst_pairs_ > 0) {
    stream_burst_word(word);
    return;
  }
  charge_write();
  data_ = word;
}

void RegisterInterface::stream_word(std::uint32_t word) {
  // Stream beats are literal words (clause boundaries ride on the
  // end-of-clause bit); the engine charges them at commit.
  Lit lit = unpack_literal(word);
  if (!lit.valid()) {
    fail("malformed literal word in load stream");
    abort_load();
    return;
  }
  if (static_cast<int>(staged_clause_.size()) + 1 > engine_.slot_capacity()) {
    fail("clause exceeds slot capacity");
    abort_load();
    return;
  }
  staged_clause_.push_back(lit);
  if ((word & kLitEndOfClause) == 0) return;

  staged_.push_back(std::move(staged_clause_));
  staged_clause_.clear();
  if (static_cast<int>(staged_.size()) == expected_clauses_) {
    engine_.load_clauses(load_partition_id_, staged_);
    abort_load();
    status_ &= ~kStatusError;  // a fresh image clears the sticky bit
    readout_.clear();
    refresh_flags();
  }
}

void RegisterInterface::stream_burst_word(std::uint32_t word) {
  if (counters_)
    counters_->interface_cycles += static_cast<std::uint64_t>(cost_.axi_stream_word_cycles);
  if (!burst_have_level_) {
    burst_level_ = static_cast<int>(word & kLevelMask);
    burst_have_level_ = true;
    return;
  }
  burst_have_level_ = false;
  bool last = --burst_pairs_ == 0;
  if (!burst_discard_) {
    Lit lit = unpack_literal(word);
    TruthValue existing = lit.valid() ? engine_.assigned_value(lit.var()) : TruthValue::Unassigned;
    TruthValue wanted = lit.positive() ? TruthValue::True : TruthValue::False;
    if (!lit.valid()) {
      fail("broadcast of variable 0");
      burst_discard_ = true;
    } else if (existing != TruthValue::Unassigned && existing != wanted) {
      fail("conflicting re-broadcast");
      burst_discard_ = true;
    } else {
      engine_.broadcast(lit, burst_level_);
    }
  }
  if (last) {
    // one evaluation settles whatever part of the burst was applied
    if (engine_.control() == ControlState::Evaluate) engine_.evaluate();
    abort_burst();
    refresh_flags();
  } else if (burst_discard_ && engine_.control() == ControlState::Evaluate) {
    engine_.evaluate();  // settle the applied prefix before discarding the rest
  }
}

std::uint32_t RegisterInterface::poll_status() {
  charge_read();
  if (counters_) ++counters_->status_polls;
  return status_;
}

std::uint32_t RegisterInterface::read_impl_out() {
  charge_read();
  return impl_out_;
}

void RegisterInterface::write_command(Command cmd) {
  charge_write();
  if (loading_ || burst_pairs_ > 0) {
    // Only data beats are legal while a stream is open.
    fail("command during open data stream");
    abort_load();
    abort_burst();
    return;
  }
  status_ &= ~kStatusDone;  // done is cleared by the next command

  switch (cmd.opcode) {
    case Opcode::Nop:
      break;
    case Opcode::LoadClause:
      dispatch_load_begin(cmd.operand);
      break;
    case Opcode::BroadcastLiteral:
      dispatch_broadcast(cmd.operand);
      break;
    case Opcode::ClearAbove:
      engine_.clear_above(static_cast<int>(cmd.operand & kLevelMask));
      readout_.clear();
      status_ &= ~kStatusError;
      break;
    case Opcode::StartBcp:
      dispatch_start(cmd.operand);
      break;
    case Opcode::ReadImplication:
      dispatch_read_implication();
      break;
    default:
      fail("unknown opcode");
      break;
  }
  refresh_flags();
}

void RegisterInterface::dispatch_load_begin(std::uint32_t operand) {
  if ((operand & kLoadBegin) == 0) {
    fail("LOAD_CLAUSE without begin flag");
    return;
  }
  ControlState c = engine_.control();
  if (c != ControlState::Idle && c != ControlState::ReportDone && c != ControlState::ReportConflict) {
    fail("load while engine mid-transaction");
    return;
  }
  int count = static_cast<int>((operand >> kLoadCountShift) & kLoadCountMask);
  if (count > engine_.num_slots()) {
    fail("partition exceeds clause processor array");
    return;
  }
  loading_ = true;
  expected_clauses_ = count;
  load_partition_id_ = static_cast<int>(operand & kPartitionIdMask);
  staged_.clear();
  staged_clause_.clear();
  if (count == 0) {  // an empty image just clears the array
    engine_.load_clauses(load_partition_id_, {});
    abort_load();
    readout_.clear();
  }
}

void RegisterInterface::dispatch_broadcast(std::uint32_t operand) {
  ControlState c = engine_.control();
  bool latched = c == ControlState::ReportConflict;
  if (!latched && c != ControlState::Idle && c != ControlState::ReportDone &&
      c != ControlState::SelectImplication) {
    fail("broadcast while engine mid-transaction");
    return;
  }

  if (operand & kBcastBurst) {
    int count = static_cast<int>(operand & kBcastCountMask);
    if (count < 1) {
      fail("broadcast burst with zero count");
      return;
    }
    burst_pairs_ = count;
    burst_have_level_ = false;
    burst_discard_ = latched;  // a latched conflict discards the whole burst
    return;
  }

  if (latched) return;  // latched; single broadcasts are discarded
  Lit lit = unpack_literal(data_);
  if (!lit.valid()) {
    fail("broadcast of variable 0");
    return;
  }
  TruthValue existing = engine_.assigned_value(lit.var());
  TruthValue wanted = lit.positive() ? TruthValue::True : TruthValue::False;
  if (existing != TruthValue::Unassigned && existing != wanted) {
    fail("conflicting re-broadcast");
    return;
  }
  int level = static_cast<int>(operand & kLevelMask);
  engine_.broadcast(lit, level);
  engine_.evaluate();
}

void RegisterInterface::dispatch_start(std::uint32_t operand) {
  ControlState c = engine_.control();
  if (c != ControlState::Idle && c != ControlState::ReportDone &&
      c != ControlState::SelectImplication) {
    fail("START_BCP while engine not ready");
    return;
  }
  std::optional<Lit> trigger;
  if (operand & kStartTrigger) {
    Lit lit = unpack_literal(data_);
    if (!lit.valid()) {
      fail("trigger literal with variable 0");
      return;
    }
    TruthValue existing = engine_.assigned_value(lit.var());
    TruthValue wanted = lit.positive() ? TruthValue::True : TruthValue::False;
    if (existing != TruthValue::Unassigned && existing != wanted) {
      fail("conflicting trigger re-broadcast");
      return;
    }
    trigger = lit;
  }
  int level = static_cast<int>(operand & kLevelMask);

  std::uint64_t before = engine_.cycle_count();
  BcpResult result = engine_.run_bcp(trigger, level);
  std::uint64_t run_cycles = engine_.cycle_count() - before;

  // The processor polls for completion every poll_interval cycles; the last
  // poll observes the final status.
  std::uint64_t interval = static_cast<std::uint64_t>(cost_.poll_interval_cycles);
  std::uint64_t polls = run_cycles == 0 ? 1 : (run_cycles + interval - 1) / interval;
  if (counters_) {
    counters_->interface_cycles += polls * static_cast<std::uint64_t>(cost_.axi_read_cycles);
    counters_->status_polls += polls;
  }

  if (result.conflict) {
    readout_.clear();
  } else {
    for (const Implication& imp : result.implied) readout_.push_back(imp);
    status_ |= kStatusDone;
  }
}

void RegisterInterface::dispatch_read_implication() {
  if (readout_.empty()) {
    fail("READ_IMPLICATION with none available");
    return;
  }
  last_read_ = readout_.front();
  readout_.pop_front();
  impl_out_ = pack_literal(last_read_.literal);
}

void RegisterInterface::load_partition(const Formula& f, const Partition& p) {
  std::uint32_t operand = kLoadBegin |
                          (static_cast<std::uint32_t>(p.clause_indices.size()) << kLoadCountShift) |
                          (static_cast<std::uint32_t>(p.id) & kPartitionIdMask);
  write_command({Opcode::LoadClause, operand});
  for (int ci : p.clause_indices) {
    const Clause& c = f.clauses()[static_cast<std::size_t>(ci)];
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::uint32_t word = pack_literal(c.literals()[i]);
      if (i + 1 == c.size()) word |= kLitEndOfClause;
      write_data(word);
    }
  }
}

void RegisterInterface::feed(Lit lit, int level) {
  write_data(pack_literal(lit));
  write_command({Opcode::BroadcastLiteral, static_cast<std::uint32_t>(level) & kLevelMask});
}

void RegisterInterface::feed_burst(const std::vector<std::pair<Lit, int>>& batch) {
  for (std::size_t base = 0; base < batch.size(); base += kBcastCountMask) {
    std::size_t count = std::min<std::size_t>(batch.size() - base, kBcastCountMask);
    write_command({Opcode::BroadcastLiteral, kBcastBurst | static_cast<std::uint32_t>(count)});
    for (std::size_t i = base; i < base + count; ++i) {
      write_data(static_cast<std::uint32_t>(batch[i].second) & kLevelMask);
      write_data(pack_literal(batch[i].first));
    }
  }
}

std::uint32_t RegisterInterface::start_bcp(std::optional<Lit> trigger, int level) {
  std::uint32_t operand = static_cast<std::uint32_t>(level) & kLevelMask;
  if (trigger) {
    write_data(pack_literal(*trigger));
    operand |= kStartTrigger;
  }
  write_command({Opcode::StartBcp, operand});
  return status_;  // value observed by the final completion poll
}

Implication RegisterInterface::read_implication() {
  if (readout_.empty()) throw std::logic_error("read_implication with none available");
  write_command({Opcode::ReadImplication, 0});
  if (sticky_error()) throw std::logic_error("read_implication protocol violation");
  read_impl_out();
  return last_read_;
}

void RegisterInterface::clear_above(int level) {
  write_command({Opcode::ClearAbove, static_cast<std::uint32_t>(level) & kLevelMask});
}

}  // namespace satswap
