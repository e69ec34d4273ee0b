#include "satswap/registers.hpp"

#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace satswap;
using test::make_formula;

namespace {

Partition whole_partition(const Formula& f, int id = 0) {
  Partition p;
  p.id = id;
  std::set<int> vars;
  for (int ci = 0; ci < static_cast<int>(f.clauses().size()); ++ci) {
    p.clause_indices.push_back(ci);
    for (Lit l : f.clauses()[static_cast<std::size_t>(ci)].literals()) vars.insert(l.var());
  }
  p.local_vars.assign(vars.begin(), vars.end());
  return p;
}

}  // namespace

TEST_CASE("opcode encodings are pinned") {
  CHECK(static_cast<int>(Opcode::Nop) == 0x0);
  CHECK(static_cast<int>(Opcode::LoadClause) == 0x1);
  CHECK(static_cast<int>(Opcode::BroadcastLiteral) == 0x2);
  CHECK(static_cast<int>(Opcode::ClearAbove) == 0x3);
  CHECK(static_cast<int>(Opcode::StartBcp) == 0x4);
  CHECK(static_cast<int>(Opcode::ReadImplication) == 0x5);
}

TEST_CASE("literal word layout and round trip") {
  CHECK(pack_literal(Lit(3, true)) == (3u | kLitPolarityBit));
  CHECK(pack_literal(Lit(5, false)) == 5u);
  CHECK(unpack_literal(pack_literal(Lit(1234, false))) == Lit(1234, false));
  CHECK_THROWS_AS(pack_literal(Lit(1 << 24, true)), std::invalid_argument);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    std::uint32_t var = 1 + static_cast<std::uint32_t>(rng() % kMaxRegisterVar);
    std::uint32_t word = var | (rng() % 2 ? kLitPolarityBit : 0);
    CHECK(pack_literal(unpack_literal(word)) == word);
  }
  for (int i = 0; i < 1000; ++i) {
    Command cmd{static_cast<Opcode>(rng() % 6), static_cast<std::uint32_t>(rng()) & 0x0FFF'FFFFu};
    Command back = unpack_command(pack_command(cmd));
    CHECK(back.opcode == cmd.opcode);
    CHECK(back.operand == cmd.operand);
  }
}

TEST_CASE("freshly reset interface reads status zero") {
  BcpEngine engine({8, 16}, CostModel{});
  PerfCounters pc;
  RegisterInterface reg(engine, CostModel{}, &pc);
  CHECK(reg.poll_status() == 0);
  CHECK(pc.status_polls == 1);
  CHECK(pc.interface_cycles == 8);
}

TEST_CASE("start, poll, and read implications in emission order") {
  Formula f = make_formula(3, {{-1, 2}, {-2, 3}});
  PerfCounters pc;
  BcpEngine engine({8, 16}, CostModel{}, &pc);
  RegisterInterface reg(engine, CostModel{}, &pc);
  reg.load_partition(f, whole_partition(f));
  CHECK(pc.swap_cycles == 4);       // four literal words
  CHECK(pc.partition_swaps == 1);

  std::uint32_t st = reg.start_bcp(Lit(1, true), 1);
  CHECK((st & kStatusDone) != 0);
  CHECK((st & kStatusConflict) == 0);
  CHECK((st & kStatusImplicationAvailable) != 0);
  CHECK(reg.unread_implications() == 2);

  Implication a = reg.read_implication();
  CHECK(a.literal == Lit(2, true));
  Implication b = reg.read_implication();
  CHECK(b.literal == Lit(3, true));
  CHECK((reg.poll_status() & kStatusImplicationAvailable) == 0);
}

TEST_CASE("completion polling is charged by run length and poll interval") {
  Formula f = make_formula(3, {{-1, 2}, {-2, 3}});
  BcpEngine engine({8, 16}, CostModel{});
  PerfCounters pc;
  RegisterInterface reg(engine, CostModel{}, &pc);
  reg.load_partition(f, whole_partition(f));

  std::uint64_t polls_before = pc.status_polls;
  std::uint64_t engine_before = engine.cycle_count();
  reg.start_bcp(Lit(1, true), 1);
  // run = trigger broadcast+evaluate, two select+broadcast+evaluate rounds:
  // 2 + 3 + 3 = 8 cycles; ceil(8 / 4) = 2 polls at the default interval
  CHECK(engine.cycle_count() - engine_before == 8);
  CHECK(pc.status_polls - polls_before == 2);
}

TEST_CASE("conflict raises the conflict bit and clears the readout queue") {
  Formula f = make_formula(2, {{-1, 2}, {-1, -2}});
  BcpEngine engine({8, 16}, CostModel{});
  RegisterInterface reg(engine, CostModel{});
  reg.load_partition(f, whole_partition(f));
  std::uint32_t st = reg.start_bcp(Lit(1, true), 1);
  CHECK((st & kStatusConflict) != 0);
  CHECK((st & kStatusDone) == 0);  // conflict and done are mutually exclusive
  CHECK(reg.unread_implications() == 0);
  // CLEAR_ABOVE is legal right after a reported conflict (backtracking path)
  reg.clear_above(0);
  CHECK(!reg.sticky_error());
  CHECK((reg.poll_status() & kStatusConflict) == 0);
}

TEST_CASE("done is set once per start and cleared by the next command") {
  Formula f = make_formula(2, {{1, 2}});
  BcpEngine engine({8, 16}, CostModel{});
  RegisterInterface reg(engine, CostModel{});
  reg.load_partition(f, whole_partition(f));
  std::uint32_t st = reg.start_bcp(Lit(1, true), 1);
  CHECK((st & kStatusDone) != 0);
  reg.write_command({Opcode::Nop, 0});
  CHECK((reg.poll_status() & kStatusDone) == 0);
}

TEST_CASE("malformed operands set the sticky error and do not touch the engine") {
  Formula f = make_formula(2, {{1, 2}});
  BcpEngine engine({8, 16}, CostModel{});
  RegisterInterface reg(engine, CostModel{});
  reg.load_partition(f, whole_partition(f));
  BcpEngine::StateDigest before = engine.digest();

  SUBCASE("broadcast of variable 0") {
    reg.write_data(0);
    reg.write_command({Opcode::BroadcastLiteral, 1});
  }
  SUBCASE("conflicting re-broadcast") {
    reg.start_bcp(Lit(1, true), 1);
    before = engine.digest();
    reg.feed(Lit(1, false), 1);
  }
  SUBCASE("read with no implication available") {
    reg.write_command({Opcode::ReadImplication, 0});
  }
  SUBCASE("oversized partition image") {
    reg.write_command({Opcode::LoadClause, kLoadBegin | (100u << kLoadCountShift)});
  }
  CHECK(reg.sticky_error());
  CHECK(engine.digest() == before);
}

TEST_CASE("broadcasts are discarded while a conflict is latched") {
  Formula f = make_formula(2, {{-1, 2}, {-1, -2}});
  BcpEngine engine({8, 16}, CostModel{});
  RegisterInterface reg(engine, CostModel{});
  reg.load_partition(f, whole_partition(f));
  reg.start_bcp(Lit(1, true), 1);
  BcpEngine::StateDigest before = engine.digest();
  reg.feed(Lit(2, true), 1);
  CHECK(!reg.sticky_error());
  CHECK(engine.digest() == before);
}

TEST_CASE("driver-level feed parks the engine and a trigger-less start resumes") {
  Formula f = make_formula(3, {{-1, 2}, {-2, 3}});
  BcpEngine engine({8, 16}, CostModel{});
  RegisterInterface reg(engine, CostModel{});
  reg.load_partition(f, whole_partition(f));
  reg.feed(Lit(1, true), 1);
  CHECK(engine.control() == ControlState::SelectImplication);
  std::uint32_t st = reg.start_bcp(std::nullopt, 1);
  CHECK((st & kStatusDone) != 0);
  CHECK(reg.unread_implications() == 2);
}

TEST_CASE("command scripts through the register layer match direct engine calls") {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 40; ++iter) {
    int vars = 5 + static_cast<int>(rng() % 8);
    int clauses = 3 + static_cast<int>(rng() % 20);
    Formula f = gen_random(vars, clauses, 1 + static_cast<int>(rng() % 3), rng());
    Partition p = whole_partition(f, static_cast<int>(rng() % 100));

    BcpEngine via_reg({32, 16}, CostModel{});
    RegisterInterface reg(via_reg, CostModel{});
    BcpEngine direct({32, 16}, CostModel{});

    reg.load_partition(f, p);
    direct.load_partition(f, p);

    int level = 0;
    for (int step = 0; step < 12; ++step) {
      int op = static_cast<int>(rng() % 4);
      if (op == 0) {
        Lit lit(1 + static_cast<int>(rng() % vars), rng() % 2 == 0);
        TruthValue existing = direct.assigned_value(lit.var());
        TruthValue wanted = lit.positive() ? TruthValue::True : TruthValue::False;
        if (existing != TruthValue::Unassigned && existing != wanted) continue;
        ++level;
        reg.feed(lit, level);
        if (direct.control() != ControlState::ReportConflict) {
          direct.broadcast(lit, level);
          direct.evaluate();
        }
      } else if (op == 1) {
        if (direct.control() == ControlState::ReportConflict) continue;
        reg.start_bcp(std::nullopt, level);
        direct.run_bcp(std::nullopt, level);
      } else if (op == 2) {
        int target = level == 0 ? 0 : static_cast<int>(rng() % (level + 1));
        reg.clear_above(target);
        direct.clear_above(target);
        level = target;
      } else {
        reg.poll_status();  // pure read, no engine effect
      }
      REQUIRE(via_reg.digest() == direct.digest());
      REQUIRE(!reg.sticky_error());
    }
  }
}
