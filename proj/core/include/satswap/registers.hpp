#pragma once

// Register-level model of the processor<->accelerator protocol: command and
// data registers, status polling and implication readout. This is the wire
// ABI the solver drives; a memory-mapped backend can replace it without
// touching anything above.
//
// Registers (32-bit):
//   CMD      (write)  bits 31..28 opcode, bits 27..0 operand
//   DATA     (write)  payload word, usually a packed literal
//   STATUS   (read)   bit 0 done, bit 1 conflict, bit 2 implication_available,
//                     bit 3 sticky error
//   IMPL_OUT (read)   packed literal of the last READ_IMPLICATION
//
// Packed literal word: bits 23..0 variable id (1..2^24-1), bit 24 polarity
// (1 = positive), bits 31..25 reserved zero.
//
// Opcodes and operand layouts:
//   0x0 NOP
//   0x1 LOAD_CLAUSE       bit 27 begin, bits 26..16 clause count,
//                         bits 15..0 partition id. Opens a load stream:
//                         subsequent DATA writes are literal words, bit 25
//                         marking the last literal of each clause; the image
//                         commits to the engine after the declared number of
//                         clauses.
//   0x2 BROADCAST_LITERAL single: bits 15..0 decision level, DATA holds the
//                         literal. Broadcasts and settles statuses without
//                         running the implication loop. Burst (bit 26 set,
//                         bits 10..0 pair count): followed by count pairs of
//                         DATA words (level word, then literal word); the
//                         array settles once at the end of the burst.
//                         Ignored while a conflict is latched.
//   0x3 CLEAR_ABOVE       bits 15..0 level. Also clears unread implications
//                         and the sticky error bit.
//   0x4 START_BCP         bit 16 trigger-present, bits 15..0 level; DATA
//                         holds the trigger literal when present. Runs to
//                         completion; completion polling is modeled here.
//   0x5 READ_IMPLICATION  pops the next emitted implication into IMPL_OUT.
//
// Malformed operands (variable id 0, oversized ids, capacity violations,
// commands while a load stream is open, conflicting re-broadcasts) set the
// sticky error bit and leave the engine untouched.

#include <cstdint>
#include <deque>
#include <optional>

#include "satswap/engine.hpp"
#include "satswap/perf.hpp"
#include "satswap/trace.hpp"

namespace satswap {

enum class Opcode : std::uint8_t {
  Nop = 0x0,
  LoadClause = 0x1,
  BroadcastLiteral = 0x2,
  ClearAbove = 0x3,
  StartBcp = 0x4,
  ReadImplication = 0x5,
};

struct Command {
  Opcode opcode = Opcode::Nop;
  std::uint32_t operand = 0;
};

inline constexpr std::uint32_t kStatusDone = 1u << 0;
inline constexpr std::uint32_t kStatusConflict = 1u << 1;
inline constexpr std::uint32_t kStatusImplicationAvailable = 1u << 2;
inline constexpr std::uint32_t kStatusError = 1u << 3;

inline constexpr std::uint32_t kLitVarMask = 0x00FF'FFFFu;
inline constexpr std::uint32_t kLitPolarityBit = 1u << 24;
inline constexpr std::uint32_t kLitEndOfClause = 1u << 25;  // load-stream framing
inline constexpr int kMaxRegisterVar = 0x00FF'FFFF;

inline constexpr std::uint32_t kLoadBegin = 1u << 27;
inline constexpr std::uint32_t kLoadCountShift = 16;
inline constexpr std::uint32_t kLoadCountMask = 0x7FFu;
inline constexpr std::uint32_t kPartitionIdMask = 0xFFFFu;
inline constexpr std::uint32_t kStartTrigger = 1u << 16;
inline constexpr std::uint32_t kLevelMask = 0xFFFFu;
inline constexpr std::uint32_t kBcastBurst = 1u << 26;
inline constexpr std::uint32_t kBcastCountMask = 0x7FFu;

std::uint32_t pack_literal(Lit l);        // throws when var is outside 1..2^24-1
Lit unpack_literal(std::uint32_t word);   // returns an invalid Lit for var 0
std::uint32_t pack_command(Command cmd);  // throws when operand exceeds 28 bits
Command unpack_command(std::uint32_t word);

class RegisterInterface {
 public:
  RegisterInterface(BcpEngine& engine, const CostModel& cost, PerfCounters* counters = nullptr,
                    TraceSink* trace = nullptr);

  // Raw register transactions; writes and reads charge AXI latency.
  void write_data(std::uint32_t word);
  void write_command(Command cmd);
  std::uint32_t poll_status();
  std::uint32_t read_impl_out();

  // Driver helpers expressed in terms of the transactions above.
  void load_partition(const Formula& f, const Partition& p);
  void feed(Lit lit, int level);  // DATA + BROADCAST_LITERAL
  void feed_burst(const std::vector<std::pair<Lit, int>>& batch);
  // DATA (when triggered) + START_BCP; returns the status observed by the
  // final completion poll (already charged as part of the modeled polling).
  std::uint32_t start_bcp(std::optional<Lit> trigger, int level);
  Implication read_implication();  // READ_IMPLICATION + IMPL_OUT read
  void clear_above(int level);

  bool sticky_error() const { return (status_ & kStatusError) != 0; }
  std::uint32_t status_word() const { return status_; }
  std::size_t unread_implications() const { return readout_.size(); }

 private:
  void charge_write();
  void charge_read();
  void refresh_flags();
  void fail(const char* why);
  void abort_load();
  void abort_burst();
  void dispatch_load_begin(std::uint32_t operand);
  void dispatch_broadcast(std::uint32_t operand);
  void dispatch_start(std::uint32_t operand);
  void dispatch_read_implication();
  void stream_word(std::uint32_t word);
  void stream_burst_word(std::uint32_t word);

  BcpEngine& engine_;
  CostModel cost_;
  PerfCounters* counters_;
  TraceSink* trace_;

  std::uint32_t data_ = 0;
  std::uint32_t status_ = 0;
  std::uint32_t impl_out_ = 0;
  std::deque<Implication> readout_;
  Implication last_read_;

  // open load stream
  bool loading_ = false;
  int expected_clauses_ = 0;
  int load_partition_id_ = 0;
  std::vector<std::vector<Lit>> staged_;
  std::vector<Lit> staged_clause_;

  // open broadcast burst
  int burst_pairs_ = 0;
  bool burst_have_level_ = false;
  bool burst_discard_ = false;
  int burst_level_ = 0;
};

}  // namespace satswap
